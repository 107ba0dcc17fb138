#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "config.hpp"

namespace rlan::cli {

// Executes the configured subcommand, writing CSVs and manifest.txt into
// cfg.output_dir. Returns the files written. Outputs do not depend on
// `threads`.
std::vector<std::filesystem::path> run(const RunConfig& cfg, unsigned threads,
                                       std::ostream& log);

std::string figure1_filename(std::size_t n, double delta_exponent);

}  // namespace rlan::cli
