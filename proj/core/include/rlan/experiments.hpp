#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rlan/design.hpp"
#include "rlan/estimators.hpp"
#include "rlan/model.hpp"

namespace rlan {

struct ScalingConfig {
  std::string model_name;
  ModelParams model_params;
  double true_theta = 0.0;
  std::vector<std::size_t> n_ladder{256, 1024, 4096};
  double m_exponent = 0.75;  // m = ceil(n^a), 1/2 < a < 1
  int J = 10;
  std::size_t replicates = 500;
  std::uint64_t master_seed = 1;
  double delta_exponent = 0.25;
  // The grid spans center +- grid_halfwidth * n^{-delta_exponent}, so the
  // spacing is grid_halfwidth * n^{-delta_exponent} / J.
  double grid_halfwidth = 1.0;
  bool share_draws = false;
  // Use the exact likelihood on both arms (no Monte Carlo).
  bool exact_only = false;
  unsigned threads = 1;

  // Throws InvalidArgument on a violated invariant.
  void validate() const;
};

// ceil(n^a), guarding against pow rounding just above an integer.
std::size_t mc_draws(std::size_t n, double a);

struct ReplicateResult {
  GridSpec grid;
  EstimatorResult mc;
  EstimatorResult exact;
  double theta_star = 0.0;
  std::uint64_t simulations = 0;
};

// One dataset through preliminary estimate -> discretize -> grid ->
// likelihood -> cubic fit -> MCLE, with Monte Carlo and exact likelihoods on
// the same data. Deterministic in (config, n, rep).
ReplicateResult run_replicate(const Model& model, const ScalingConfig& cfg,
                              std::size_t n, std::size_t rep);

struct ScalingRow {
  std::size_t n = 0;
  std::size_t m = 0;
  double se_stat_hat = 0.0;
  double se_mc_hat = 0.0;   // SD of the paired difference MC - exact
  double ratio_sq = 0.0;    // se_mc_hat^2 / se_stat_hat^2
  double mean_bias = 0.0;   // mean of MC - exact
  double fallback_rate = 0.0;
  double se_stat = 0.0;     // 1 / sqrt(n I(theta))
  double var_mc = 0.0;
  double var_exact = 0.0;
  std::uint64_t simulations = 0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double info = 0.0;
};

ScalingReport scaling_study(const ScalingConfig& cfg);

// Per-replicate estimates for one rung of the ladder, in replicate order.
std::vector<ReplicateResult> run_replicates(const Model& model,
                                            const ScalingConfig& cfg,
                                            std::size_t n);

ScalingRow summarize(std::span<const ReplicateResult> reps, std::size_t n,
                     std::size_t m, double info);

void write_scaling_csv(std::ostream& out, const ScalingReport& report);

struct SurfacePoint {
  double theta;
  double exact;
  double noisy;
};

// l(theta) = -n theta^2 at `points` values spread evenly on
// [-n^{-delta_exponent}, n^{-delta_exponent}], plus N(0, n/m) noise with
// m = n^{m_exponent}. An infinite m_exponent gives zero noise.
std::vector<SurfacePoint> figure1_surface(std::size_t n, double delta_exponent,
                                          double m_exponent, std::uint64_t seed,
                                          int points = 21);

void write_surface_csv(std::ostream& out, std::span<const SurfacePoint> rows);

struct SnrRow {
  std::size_t n;
  double exponent;
  double signal_span;  // n delta^2
  double noise_sd;     // sqrt(n / m)
  double snr;
};

// Rows for delta = n^{-1/4} and n^{-1/2} at every n, m = n^{m_exponent}.
std::vector<SnrRow> snr_table(std::span<const std::size_t> n_ladder,
                              double m_exponent);

void write_snr_csv(std::ostream& out, std::span<const SnrRow> rows);

}  // namespace rlan
