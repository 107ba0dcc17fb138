#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rlan/experiments.hpp"

namespace rlan::cli {

enum class Subcommand { kFit, kScale, kFigure1, kRlanCheck, kSnr };

std::string_view to_string(Subcommand cmd);
Subcommand parse_subcommand(std::string_view text);

struct Figure1Options {
  std::size_t n = 100;
  double delta_exponent = 0.25;
  double m_exponent = 0.5;
  friend bool operator==(const Figure1Options&, const Figure1Options&) = default;
};

struct RlanOptions {
  std::vector<std::size_t> n_ladder{256, 1024, 4096};
  std::vector<double> exponents{0.25, 0.5};
  double t = 1.0;
  std::size_t replicates = 200;
  friend bool operator==(const RlanOptions&, const RlanOptions&) = default;
};

struct SnrOptions {
  std::vector<std::size_t> n_ladder{100, 10000, 1000000};
  double m_exponent = 0.5;
  friend bool operator==(const SnrOptions&, const SnrOptions&) = default;
};

// Fully resolved run description. `study` carries the model block
// (name, hyperparameters, true theta), the scaling study fields and the seed.
struct RunConfig {
  Subcommand subcommand = Subcommand::kScale;
  ScalingConfig study;
  Figure1Options figure1;
  RlanOptions rlan;
  SnrOptions snr;
  std::string output_dir = ".";

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

// Line-oriented `key = value` text with `[section]` headers and `#` comments.
// Throws rlan::Error (UnknownKey, TypeMismatch, MissingRequired,
// InvalidArgument) naming the offending line.
RunConfig parse_config(std::string_view text);

// Inverse of parse_config: every field, defaults included.
std::string to_config_text(const RunConfig& cfg);

}  // namespace rlan::cli
