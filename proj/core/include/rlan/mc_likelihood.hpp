#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "rlan/model.hpp"
#include "rlan/rng.hpp"

namespace rlan {

struct MCLikConfig {
  std::size_t m = 1;  // importance draws per observation
  StreamKey stream;
  // Reuse each observation's draws at every grid point (common random numbers).
  bool share_draws_across_grid = false;
};

// One importance-sampling estimate of log p(y;theta).
struct PhatEstimate {
  double log_value;
  double ess;  // (sum w)^2 / sum w^2
};

// Monte Carlo log-likelihood at a single parameter value.
struct LoglikEvaluation {
  double total = 0.0;
  std::vector<double> per_obs;
  double min_weight_ess = 0.0;
  // Mean over observations of the plug-in relative weight variance m/ESS - 1;
  // Var(log p-bar) is approximately this over m.
  double mean_relative_variance = 0.0;
};

// Core estimator over a caller-provided stream; scratch is resized to m.
PhatEstimate estimate_log_phat(const Model& model, double theta, double y,
                               std::size_t m, CounterRng& rng,
                               std::vector<double>& scratch);

// log p-bar(y;theta) using cfg.stream directly. exp() of the result is an
// unbiased estimate of p(y;theta).
double is_phat(const Model& model, const ParameterPoint& theta, double y,
               const MCLikConfig& cfg);

// Stream for observation i at grid point grid_index.
StreamKey observation_stream(const MCLikConfig& cfg, std::size_t grid_index,
                             std::size_t i);

// Sum of per-observation estimates; observation i at grid point grid_index
// draws from observation_stream(cfg, grid_index, i).
LoglikEvaluation mc_loglik(const Model& model, const ParameterPoint& theta,
                           const Dataset& data, const MCLikConfig& cfg,
                           std::size_t grid_index = 0);

struct BiasPoint {
  std::size_t m;
  double bias_est;  // mean of (l-bar - l) over replicates
  double bias_se;
  double var_est;   // replicate variance of l-bar
  double var_se;
};

// Replicate study of the log-likelihood bias and variance at each m.
// Requires an exact oracle and R >= 50.
std::vector<BiasPoint> bias_curve(const Model& model,
                                  const ParameterPoint& theta,
                                  const Dataset& data,
                                  std::span<const std::size_t> m_values,
                                  std::size_t replicates, StreamKey stream,
                                  unsigned threads = 1);

// Columns: m,bias_est,bias_se,var_est,var_se
void write_bias_csv(std::ostream& out, std::span<const BiasPoint> points);

}  // namespace rlan
