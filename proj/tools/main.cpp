#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "rlan/errors.hpp"
#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo likelihood inference on rescaled grids"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "master seed (overrides master_seed)");
    sub->add_option("--threads", threads, "worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
  };
  for (const char* name : {"fit", "scale", "figure1", "rlan-check", "snr"}) {
    add_common(app.add_subcommand(name, std::string("run the ") + name + " study"));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    auto cfg = rlan::cli::parse_config(text.str());
    cfg.subcommand = rlan::cli::parse_subcommand(app.get_subcommands().front()->get_name());
    const auto* sub = app.get_subcommands().front();
    if (sub->count("--out") > 0) cfg.output_dir = out_dir;
    if (sub->count("--seed") > 0) cfg.study.master_seed = seed;
    rlan::cli::run(cfg, threads, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "rlan: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
