#include "runner.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "rlan/csv.hpp"
#include "rlan/errors.hpp"
#include "rlan/experiments.hpp"
#include "rlan/parallel.hpp"
#include "rlan/polyfit.hpp"
#include "rlan/rlan_check.hpp"

namespace rlan::cli {

namespace fs = std::filesystem;

namespace {

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : root_(dir) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot create " + root_.string() + ": " +
                                      ec.message());
    }
  }

  // Writes `fill(stream)` to root/name; the file is opened in binary mode so
  // line endings stay LF.
  template <typename Fill>
  void write(const std::string& name, Fill&& fill) {
    const fs::path path = root_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
    fill(out);
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
    written_.push_back(path);
  }

  std::vector<fs::path> files() const { return written_; }

 private:
  fs::path root_;
  std::vector<fs::path> written_;
};

void run_fit(const RunConfig& cfg, unsigned threads, OutputDir& out) {
  const auto model = make_model(cfg.study.model_name, cfg.study.model_params);
  ScalingConfig study = cfg.study;
  study.threads = threads;
  std::vector<ReplicateResult> results(study.n_ladder.size());
  parallel_for(results.size(), threads, [&](std::size_t i) {
    results[i] = run_replicate(*model, study, study.n_ladder[i], 0);
  });

  const auto write_fits = [&](bool use_mc) {
    return [&, use_mc](std::ostream& os) {
      write_fit_csv_header(os);
      for (const auto& r : results) {
        const auto& est = use_mc ? r.mc : r.exact;
        if (est.fit) write_fit_csv_row(os, r.grid, *est.fit);
      }
    };
  };
  out.write("fit.csv", write_fits(false));
  if (!study.exact_only) out.write("fit_mc.csv", write_fits(true));
  out.write("estimates.csv", [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.header({"n", "theta_star", "theta_exact", "branch_exact", "theta_mc",
                "branch_mc", "cubic_theta_exact", "simulations"});
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      const auto cubic = r.exact.diagnostics.find("cubic_theta");
      csv.row(study.n_ladder[i], r.theta_star, r.exact.theta_hat,
              to_string(r.exact.branch), r.mc.theta_hat, to_string(r.mc.branch),
              cubic == r.exact.diagnostics.end() ? 0.0 : cubic->second,
              r.simulations);
    }
  });
}

void run_scale(const RunConfig& cfg, unsigned threads, OutputDir& out) {
  ScalingConfig study = cfg.study;
  study.threads = threads;
  const ScalingReport report = scaling_study(study);
  out.write("scaling_report.csv",
            [&](std::ostream& os) { write_scaling_csv(os, report); });
}

void run_figure1(const RunConfig& cfg, OutputDir& out) {
  const auto& f = cfg.figure1;
  const auto rows = figure1_surface(f.n, f.delta_exponent, f.m_exponent,
                                    cfg.study.master_seed);
  out.write(figure1_filename(f.n, f.delta_exponent),
            [&](std::ostream& os) { write_surface_csv(os, rows); });
}

void run_rlan_check(const RunConfig& cfg, unsigned threads, OutputDir& out) {
  const auto model = make_model(cfg.study.model_name, cfg.study.model_params);
  const ParameterPoint theta = model->point(cfg.study.true_theta);
  const RlanCoefficients coeffs = rlan_coefficients(*model, theta);
  const double thetas[] = {cfg.study.true_theta};
  out.write("rlan_coefficients.csv", [&](std::ostream& os) {
    write_coefficients_csv(os, thetas, std::span(&coeffs, 1));
  });

  struct Row {
    std::size_t n;
    double exponent;
    std::size_t rep;
    double score_family;
    double squared_mean;
    double taylor;
  };
  std::vector<Row> rows;
  const StreamKey root = StreamKey(cfg.study.master_seed).child("rlan");
  for (std::size_t n : cfg.rlan.n_ladder) {
    for (double exponent : cfg.rlan.exponents) {
      std::vector<Row> block(cfg.rlan.replicates);
      parallel_for(block.size(), threads, [&](std::size_t r) {
        const Dataset data =
            sample_dataset(*model, theta, n, root.child(n).child(r));
        const auto rem = [&](ExpansionForm form) {
          return expansion_remainder(*model, theta, data, cfg.rlan.t, exponent,
                                     coeffs, form);
        };
        block[r] = {n,
                    exponent,
                    r,
                    rem(ExpansionForm::kScoreFamily),
                    rem(ExpansionForm::kScoreFamilySquaredMean),
                    rem(ExpansionForm::kTaylor)};
      });
      rows.insert(rows.end(), block.begin(), block.end());
    }
  }
  out.write("rlan_remainder.csv", [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.header({"n", "exponent", "t", "replicate", "remainder",
                "remainder_squared_mean", "remainder_taylor"});
    for (const auto& r : rows) {
      csv.row(r.n, r.exponent, cfg.rlan.t, r.rep, r.score_family, r.squared_mean,
              r.taylor);
    }
  });
}

void run_snr(const RunConfig& cfg, OutputDir& out) {
  const auto rows = snr_table(cfg.snr.n_ladder, cfg.snr.m_exponent);
  out.write("snr.csv", [&](std::ostream& os) { write_snr_csv(os, rows); });
}

}  // namespace

std::string figure1_filename(std::size_t n, double delta_exponent) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), delta_exponent);
  return "figure1_" + std::to_string(n) + "_" + std::string(buf, res.ptr) +
         ".csv";
}

std::vector<fs::path> run(const RunConfig& cfg, unsigned threads,
                          std::ostream& log) {
  OutputDir out(cfg.output_dir);
  const unsigned workers = threads == 0 ? 1 : threads;
  log << "rlan " << to_string(cfg.subcommand) << " -> " << cfg.output_dir
      << '\n';
  switch (cfg.subcommand) {
    case Subcommand::kFit: run_fit(cfg, workers, out); break;
    case Subcommand::kScale: run_scale(cfg, workers, out); break;
    case Subcommand::kFigure1: run_figure1(cfg, out); break;
    case Subcommand::kRlanCheck: run_rlan_check(cfg, workers, out); break;
    case Subcommand::kSnr: run_snr(cfg, out); break;
  }
  out.write("manifest.txt", [&](std::ostream& os) {
    os << "# Resolved configuration; rerun with --config manifest.txt.\n"
       << "# se_mc_hat is the replicate SD of (MC estimate - exact estimate)"
          " on common data.\n"
       << to_config_text(cfg);
  });
  for (const auto& f : out.files()) log << "  wrote " << f.string() << '\n';
  return out.files();
}

}  // namespace rlan::cli
