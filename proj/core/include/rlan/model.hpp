#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlan/rng.hpp"

namespace rlan {

// Open interval; either end may be infinite.
struct Interval {
  double lower;
  double upper;

  bool contains(double x) const { return lower < x && x < upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval real_line();

// A scalar parameter value together with its admissible open interval.
class ParameterPoint {
 public:
  ParameterPoint(double theta, Interval bounds);

  double theta() const { return theta_; }
  const Interval& bounds() const { return bounds_; }

 private:
  double theta_;
  Interval bounds_;
};

// Observed sample Y_1..Y_n, n >= 1.
class Dataset {
 public:
  explicit Dataset(std::vector<double> observations);

  std::size_t size() const { return observations_.size(); }
  std::span<const double> observations() const { return observations_; }
  double operator[](std::size_t i) const { return observations_[i]; }
  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<double> observations_;
};

struct ModelParams {
  double tau = 1.0;              // gauss-mean-latent prior SD
  double sigma = 1.0;            // gauss-mean-latent observation SD
  double latent_fraction = 0.5;  // gauss-scale: share of theta^2 carried by X
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Latent-variable model p(y;theta) = \int p_{Y|X}(y|x;theta) p_X(x;theta) dx.
// Densities are exposed in log space; the proposal defaults to the prior.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string_view name() const = 0;
  virtual Interval parameter_space() const = 0;

  virtual double prior_logdensity(double x, double theta) const = 0;
  virtual double prior_sample(double theta, CounterRng& rng) const = 0;
  virtual double cond_logdensity(double y, double x, double theta) const = 0;
  virtual double proposal_logdensity(double x, double theta) const {
    return prior_logdensity(x, theta);
  }
  virtual double proposal_sample(double theta, CounterRng& rng) const {
    return prior_sample(theta, rng);
  }

  // log p(y;theta) when it has a closed form.
  virtual std::optional<double> exact_logdensity(double y, double theta) const {
    (void)y;
    (void)theta;
    return std::nullopt;
  }
  // d^k/dtheta^k log p(y;theta), 1 <= k <= 4, when it has a closed form.
  virtual std::optional<double> logdensity_derivative(double y, double theta,
                                                      int order) const {
    (void)y;
    (void)theta;
    (void)order;
    return std::nullopt;
  }

  virtual double data_sample(double theta, CounterRng& rng) const = 0;

  // Method-of-moments estimate of theta, not yet clamped to the parameter
  // space. Throws DegenerateData when the statistic is degenerate.
  virtual double moment_estimate(std::span<const double> data) const = 0;

  // Integration ranges covering the data density and the latent integrand to
  // 12 standard deviations.
  virtual Interval data_range(double theta) const = 0;
  virtual Interval latent_range(double y, double theta) const = 0;

  // out[k] = log[p_{Y|X}(y|X_k) p_X(X_k) / q(X_k)] with X_k ~ q, drawn in
  // order from rng.
  virtual void log_weights(double y, double theta, CounterRng& rng,
                           std::span<double> out) const;

  double prior_density(double x, double theta) const;
  double cond_density(double y, double x, double theta) const;
  double proposal_density(double x, double theta) const;

  ParameterPoint point(double theta) const {
    return ParameterPoint(theta, parameter_space());
  }
};

// X ~ N(theta, tau^2), Y | X ~ N(X, sigma^2); marginally Y ~ N(theta, tau^2 + sigma^2).
class GaussMeanLatent final : public Model {
 public:
  explicit GaussMeanLatent(double tau = 1.0, double sigma = 1.0);

  std::string_view name() const override { return "gauss-mean-latent"; }
  Interval parameter_space() const override;
  double prior_logdensity(double x, double theta) const override;
  double prior_sample(double theta, CounterRng& rng) const override;
  double cond_logdensity(double y, double x, double theta) const override;
  std::optional<double> exact_logdensity(double y, double theta) const override;
  std::optional<double> logdensity_derivative(double y, double theta,
                                              int order) const override;
  double data_sample(double theta, CounterRng& rng) const override;
  double moment_estimate(std::span<const double> data) const override;
  Interval data_range(double theta) const override;
  Interval latent_range(double y, double theta) const override;
  void log_weights(double y, double theta, CounterRng& rng,
                   std::span<double> out) const override;

  double marginal_variance() const { return tau_ * tau_ + sigma_ * sigma_; }

 private:
  double tau_;
  double sigma_;
};

// Y ~ N(0, theta^2), theta > 0. For Monte Carlo evaluation the variance is
// split across a latent layer: X ~ N(0, r theta^2), Y | X ~ N(X, (1-r) theta^2)
// with r = latent_fraction, which leaves the marginal unchanged.
class GaussScale final : public Model {
 public:
  explicit GaussScale(double latent_fraction = 0.5);

  std::string_view name() const override { return "gauss-scale"; }
  Interval parameter_space() const override;
  double prior_logdensity(double x, double theta) const override;
  double prior_sample(double theta, CounterRng& rng) const override;
  double cond_logdensity(double y, double x, double theta) const override;
  std::optional<double> exact_logdensity(double y, double theta) const override;
  std::optional<double> logdensity_derivative(double y, double theta,
                                              int order) const override;
  double data_sample(double theta, CounterRng& rng) const override;
  double moment_estimate(std::span<const double> data) const override;
  Interval data_range(double theta) const override;
  Interval latent_range(double y, double theta) const override;
  void log_weights(double y, double theta, CounterRng& rng,
                   std::span<double> out) const override;

 private:
  double fraction_;
};

// Looks up "gauss-mean-latent" or "gauss-scale".
std::unique_ptr<Model> make_model(std::string_view name,
                                  const ModelParams& params = {});

double exact_loglik(const Model& model, const ParameterPoint& theta,
                    const Dataset& data);

// Score d/dtheta log p(y;theta).
double score(const Model& model, const ParameterPoint& theta, double y);

// I(theta) = E_theta[score^2] by adaptive quadrature.
double fisher_info(const Model& model, const ParameterPoint& theta);

Dataset sample_dataset(const Model& model, const ParameterPoint& theta,
                       std::size_t n, StreamKey stream);

}  // namespace rlan
