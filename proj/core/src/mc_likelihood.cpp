#include "rlan/mc_likelihood.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "rlan/csv.hpp"
#include "rlan/errors.hpp"
#include "rlan/numerics.hpp"
#include "rlan/parallel.hpp"

namespace rlan {

PhatEstimate estimate_log_phat(const Model& model, double theta, double y,
                               std::size_t m, CounterRng& rng,
                               std::vector<double>& scratch) {
  if (m == 0) {
    throw Error(ErrorCode::kInvalidArgument, "m must be >= 1");
  }
  scratch.resize(m);
  model.log_weights(y, theta, rng, scratch);

  double peak = -std::numeric_limits<double>::infinity();
  for (double w : scratch) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kNonFiniteLikelihood, "importance weight is NaN or +inf");
    }
    if (w > peak) peak = w;
  }
  if (peak == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kAllWeightsZero,
                "every importance weight is zero; proposal mismatch");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double w : scratch) {
    const double e = std::exp(w - peak);
    sum += e;
    sum_sq += e * e;
  }
  return {peak + std::log(sum / static_cast<double>(m)), sum * sum / sum_sq};
}

double is_phat(const Model& model, const ParameterPoint& theta, double y,
               const MCLikConfig& cfg) {
  CounterRng rng(cfg.stream);
  std::vector<double> scratch;
  return estimate_log_phat(model, theta.theta(), y, cfg.m, rng, scratch)
      .log_value;
}

StreamKey observation_stream(const MCLikConfig& cfg, std::size_t grid_index,
                             std::size_t i) {
  if (cfg.share_draws_across_grid) return cfg.stream.child("shared").child(i);
  return cfg.stream.child(grid_index).child(i);
}

LoglikEvaluation mc_loglik(const Model& model, const ParameterPoint& theta,
                           const Dataset& data, const MCLikConfig& cfg,
                           std::size_t grid_index) {
  LoglikEvaluation eval;
  eval.per_obs.resize(data.size());
  eval.min_weight_ess = static_cast<double>(cfg.m);
  std::vector<double> scratch;
  double rel_var_sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    CounterRng rng(observation_stream(cfg, grid_index, i));
    PhatEstimate est;
    try {
      est = estimate_log_phat(model, theta.theta(), data[i], cfg.m, rng,
                              scratch);
    } catch (const Error& e) {
      throw Error(e.code(),
                  std::string(e.what()) + " (observation " +
                      std::to_string(i) + ")",
                  i);
    }
    eval.per_obs[i] = est.log_value;
    eval.total += est.log_value;
    if (est.ess < eval.min_weight_ess) eval.min_weight_ess = est.ess;
    rel_var_sum += static_cast<double>(cfg.m) / est.ess - 1.0;
  }
  eval.mean_relative_variance = rel_var_sum / static_cast<double>(data.size());
  return eval;
}

std::vector<BiasPoint> bias_curve(const Model& model,
                                  const ParameterPoint& theta,
                                  const Dataset& data,
                                  std::span<const std::size_t> m_values,
                                  std::size_t replicates, StreamKey stream,
                                  unsigned threads) {
  if (replicates < 50) {
    throw Error(ErrorCode::kInvalidArgument, "bias_curve needs R >= 50");
  }
  const double exact = exact_loglik(model, theta, data);
  std::vector<BiasPoint> out;
  out.reserve(m_values.size());
  for (std::size_t m : m_values) {
    std::vector<double> diffs(replicates);
    parallel_for(replicates, threads, [&](std::size_t r) {
      MCLikConfig cfg{m, stream.child(m).child(r), false};
      diffs[r] = mc_loglik(model, theta, data, cfg).total - exact;
    });
    const double rn = static_cast<double>(replicates);
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= rn;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double d : diffs) {
      const double c = (d - mean) * (d - mean);
      m2 += c;
      m4 += c * c;
    }
    const double var = m2 / (rn - 1.0);
    const double central4 = m4 / rn;
    const double var_pop = m2 / rn;
    out.push_back({m, mean, std::sqrt(var / rn), var,
                   std::sqrt(std::max(0.0, central4 - var_pop * var_pop) / rn)});
  }
  return out;
}

void write_bias_csv(std::ostream& out, std::span<const BiasPoint> points) {
  CsvWriter csv(out);
  csv.header({"m", "bias_est", "bias_se", "var_est", "var_se"});
  for (const auto& p : points) {
    csv.row(p.m, p.bias_est, p.bias_se, p.var_est, p.var_se);
  }
}

}  // namespace rlan
