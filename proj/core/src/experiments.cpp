#include "rlan/experiments.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "rlan/csv.hpp"
#include "rlan/design.hpp"
#include "rlan/errors.hpp"
#include "rlan/mc_likelihood.hpp"
#include "rlan/parallel.hpp"
#include "rlan/polyfit.hpp"
#include "rlan/rng.hpp"

namespace rlan {

void ScalingConfig::validate() const {
  const auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, msg);
  };
  if (model_name.empty()) fail("model name is required");
  if (n_ladder.empty()) fail("n_ladder must not be empty");
  for (std::size_t n : n_ladder) {
    if (n < 4) fail("every n in the ladder must be >= 4");
  }
  if (!exact_only && !(m_exponent > 0.5 && m_exponent < 1.0)) {
    fail("m_exponent must lie in the open interval (1/2, 1)");
  }
  if (J < 2) fail("J must be >= 2");
  if (replicates < 100) fail("R must be >= 100 for standard-error estimation");
  if (!(grid_halfwidth > 0.0)) fail("grid_halfwidth must be positive");
  if (std::abs(delta_exponent - 0.25) > 1e-12 &&
      std::abs(delta_exponent - 0.5) > 1e-12) {
    fail("delta_exponent must be 1/4 or 1/2");
  }
}

std::size_t mc_draws(std::size_t n, double a) {
  const double raw = std::pow(static_cast<double>(n), a);
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) <= 1e-9 * nearest) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(raw));
}

namespace {

EstimatorResult grid_failure(double theta_star) {
  EstimatorResult res;
  res.method = Method::kOneStepRescaled;
  res.branch = Branch::kFallbackOneStep;
  res.theta_hat = theta_star;
  res.diagnostics["grid_out_of_bounds"] = 1.0;
  return res;
}

}  // namespace

ReplicateResult run_replicate(const Model& model, const ScalingConfig& cfg,
                              std::size_t n, std::size_t rep) {
  const StreamKey base = StreamKey(cfg.master_seed).child(n).child(rep);
  const ParameterPoint truth = model.point(cfg.true_theta);
  const Dataset data = sample_dataset(model, truth, n, base.child("data"));

  ReplicateResult out;
  out.theta_star = discretize(preliminary_estimate(model, data), n);
  const Interval space = model.parameter_space();

  GridSpec& grid = out.grid;
  try {
    grid = build_grid(out.theta_star, n, cfg.J, cfg.delta_exponent,
                      cfg.grid_halfwidth / cfg.J, space);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kGridOutOfBounds) throw;
    out.mc = grid_failure(out.theta_star);
    out.exact = out.mc;
    return out;
  }
  const DesignMatrix design = build_design(grid);

  std::vector<double> exact_values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    exact_values[j] = exact_loglik(model, model.point(grid.points[j]), data);
  }
  out.exact = estimate_with_fallback(lsq_fit(design, exact_values), grid,
                                     exact_values, space);
  if (cfg.exact_only) {
    out.mc = out.exact;
    return out;
  }

  const std::size_t m = mc_draws(n, cfg.m_exponent);
  const MCLikConfig mc_cfg{m, base.child("mc"), cfg.share_draws};
  std::vector<double> mc_values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    mc_values[j] =
        mc_loglik(model, model.point(grid.points[j]), data, mc_cfg, j).total;
  }
  out.mc = estimate_with_fallback(lsq_fit(design, mc_values), grid, mc_values,
                                  space);
  out.simulations = static_cast<std::uint64_t>(n) * m * grid.size();
  return out;
}

std::vector<ReplicateResult> run_replicates(const Model& model,
                                            const ScalingConfig& cfg,
                                            std::size_t n) {
  std::vector<ReplicateResult> reps(cfg.replicates);
  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
    reps[r] = run_replicate(model, cfg, n, r);
  });
  return reps;
}

namespace {

struct MeanVar {
  double mean;
  double var;
};

MeanVar mean_var(std::span<const double> xs) {
  const double k = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= k;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / (k - 1.0)};
}

}  // namespace

ScalingRow summarize(std::span<const ReplicateResult> reps, std::size_t n,
                     std::size_t m, double info) {
  std::vector<double> exact(reps.size());
  std::vector<double> mc(reps.size());
  std::vector<double> diff(reps.size());
  std::size_t fallbacks = 0;
  ScalingRow row;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    exact[r] = reps[r].exact.theta_hat;
    mc[r] = reps[r].mc.theta_hat;
    diff[r] = mc[r] - exact[r];
    if (reps[r].mc.branch == Branch::kFallbackOneStep ||
        reps[r].exact.branch == Branch::kFallbackOneStep) {
      ++fallbacks;
    }
    row.simulations += reps[r].simulations;
  }
  const MeanVar e = mean_var(exact);
  const MeanVar c = mean_var(mc);
  const MeanVar d = mean_var(diff);
  row.n = n;
  row.m = m;
  row.var_exact = e.var;
  row.var_mc = c.var;
  row.se_stat_hat = std::sqrt(e.var);
  row.se_mc_hat = std::sqrt(d.var);
  row.ratio_sq = e.var > 0.0 ? d.var / e.var : 0.0;
  row.mean_bias = d.mean;
  row.fallback_rate =
      static_cast<double>(fallbacks) / static_cast<double>(reps.size());
  row.se_stat = 1.0 / std::sqrt(static_cast<double>(n) * info);
  return row;
}

ScalingReport scaling_study(const ScalingConfig& cfg) {
  cfg.validate();
  const auto model = make_model(cfg.model_name, cfg.model_params);
  ScalingReport report;
  report.info = fisher_info(*model, model->point(cfg.true_theta));
  for (std::size_t n : cfg.n_ladder) {
    const auto reps = run_replicates(*model, cfg, n);
    const std::size_t m = cfg.exact_only ? 0 : mc_draws(n, cfg.m_exponent);
    report.rows.push_back(summarize(reps, n, m, report.info));
  }
  return report;
}

void write_scaling_csv(std::ostream& out, const ScalingReport& report) {
  // se_mc_hat comes from a paired design rather than nested Monte Carlo.
  out << "# se_mc_hat = SD of (MC - exact) estimates on shared data (paired "
         "design); ratio_sq = se_mc_hat^2 / se_stat_hat^2\n";
  CsvWriter csv(out);
  csv.header({"n", "m", "se_stat_hat", "se_mc_hat", "ratio_sq", "mean_bias",
              "fallback_rate", "se_stat", "var_mc", "var_exact",
              "simulations"});
  for (const auto& r : report.rows) {
    csv.row(r.n, r.m, r.se_stat_hat, r.se_mc_hat, r.ratio_sq, r.mean_bias,
            r.fallback_rate, r.se_stat, r.var_mc, r.var_exact, r.simulations);
  }
}

std::vector<SurfacePoint> figure1_surface(std::size_t n, double delta_exponent,
                                          double m_exponent, std::uint64_t seed,
                                          int points) {
  if (n < 4) throw Error(ErrorCode::kInvalidArgument, "figure1 needs n >= 4");
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "need >= 2 points");
  const double rn = static_cast<double>(n);
  const double delta = std::pow(rn, -delta_exponent);
  const double noise_sd =
      std::isinf(m_exponent) ? 0.0 : std::sqrt(rn / std::pow(rn, m_exponent));
  CounterRng rng(StreamKey(seed).child("figure1").child(n));
  std::vector<SurfacePoint> rows(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) {
    const double theta = -delta + 2.0 * delta * j / (points - 1);
    const double exact = -rn * theta * theta;
    const double z = rng.normal();
    rows[static_cast<std::size_t>(j)] = {theta, exact, exact + noise_sd * z};
  }
  return rows;
}

void write_surface_csv(std::ostream& out, std::span<const SurfacePoint> rows) {
  CsvWriter csv(out);
  csv.header({"theta", "exact", "noisy"});
  for (const auto& r : rows) csv.row(r.theta, r.exact, r.noisy);
}

std::vector<SnrRow> snr_table(std::span<const std::size_t> n_ladder,
                              double m_exponent) {
  std::vector<SnrRow> rows;
  for (double exponent : {0.25, 0.5}) {
    for (std::size_t n : n_ladder) {
      const double rn = static_cast<double>(n);
      const double delta = std::pow(rn, -exponent);
      const double span = rn * delta * delta;
      const double sd = std::sqrt(rn / std::pow(rn, m_exponent));
      rows.push_back({n, exponent, span, sd, span / sd});
    }
  }
  return rows;
}

void write_snr_csv(std::ostream& out, std::span<const SnrRow> rows) {
  CsvWriter csv(out);
  csv.header({"n", "exponent", "signal_span", "noise_sd", "snr"});
  for (const auto& r : rows) {
    csv.row(r.n, r.exponent, r.signal_span, r.noise_sd, r.snr);
  }
}

}  // namespace rlan
