#include "rlan/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rlan/errors.hpp"
#include "rlan/numerics.hpp"
#include "rlan/quadrature.hpp"

namespace rlan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSpan = 12.0;

void require_order(int order) {
  if (order < 0 || order > 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "derivative order must lie in 0..4");
  }
}

}  // namespace

Interval real_line() { return {-kInf, kInf}; }

ParameterPoint::ParameterPoint(double theta, Interval bounds)
    : theta_(theta), bounds_(bounds) {
  if (!(bounds.lower < bounds.upper)) {
    throw Error(ErrorCode::kInvalidArgument, "empty parameter interval");
  }
  if (!std::isfinite(theta) || !bounds.contains(theta)) {
    std::ostringstream msg;
    msg << "theta = " << theta << " outside (" << bounds.lower << ", "
        << bounds.upper << ")";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

Dataset::Dataset(std::vector<double> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dataset needs n >= 1");
  }
}

void Model::log_weights(double y, double theta, CounterRng& rng,
                        std::span<double> out) const {
  for (double& w : out) {
    const double x = proposal_sample(theta, rng);
    w = cond_logdensity(y, x, theta) + prior_logdensity(x, theta) -
        proposal_logdensity(x, theta);
  }
}

double Model::prior_density(double x, double theta) const {
  return std::exp(prior_logdensity(x, theta));
}
double Model::cond_density(double y, double x, double theta) const {
  return std::exp(cond_logdensity(y, x, theta));
}
double Model::proposal_density(double x, double theta) const {
  return std::exp(proposal_logdensity(x, theta));
}

// ---------------------------------------------------------------------------
// GaussMeanLatent

GaussMeanLatent::GaussMeanLatent(double tau, double sigma)
    : tau_(tau), sigma_(sigma) {
  if (!(tau > 0.0) || !(sigma > 0.0) || !std::isfinite(tau) ||
      !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "tau and sigma must be positive");
  }
}

Interval GaussMeanLatent::parameter_space() const { return real_line(); }

double GaussMeanLatent::prior_logdensity(double x, double theta) const {
  return normal_logpdf(x, theta, tau_ * tau_);
}

double GaussMeanLatent::prior_sample(double theta, CounterRng& rng) const {
  return theta + tau_ * rng.normal();
}

double GaussMeanLatent::cond_logdensity(double y, double x, double) const {
  return normal_logpdf(y, x, sigma_ * sigma_);
}

std::optional<double> GaussMeanLatent::exact_logdensity(double y,
                                                        double theta) const {
  return normal_logpdf(y, theta, marginal_variance());
}

std::optional<double> GaussMeanLatent::logdensity_derivative(double y,
                                                             double theta,
                                                             int order) const {
  require_order(order);
  const double v = marginal_variance();
  switch (order) {
    case 0: return exact_logdensity(y, theta);
    case 1: return (y - theta) / v;
    case 2: return -1.0 / v;
    default: return 0.0;
  }
}

double GaussMeanLatent::data_sample(double theta, CounterRng& rng) const {
  return theta + std::sqrt(marginal_variance()) * rng.normal();
}

double GaussMeanLatent::moment_estimate(std::span<const double> data) const {
  double sum = 0.0;
  for (double y : data) sum += y;
  return sum / static_cast<double>(data.size());
}

Interval GaussMeanLatent::data_range(double theta) const {
  const double sd = std::sqrt(marginal_variance());
  return {theta - kSpan * sd, theta + kSpan * sd};
}

Interval GaussMeanLatent::latent_range(double y, double theta) const {
  const double sd = std::max(tau_, sigma_);
  return {std::min(y, theta) - kSpan * sd, std::max(y, theta) + kSpan * sd};
}

void GaussMeanLatent::log_weights(double y, double theta, CounterRng& rng,
                                  std::span<double> out) const {
  // Prior proposal: the weight reduces to p_{Y|X}.
  const double var = sigma_ * sigma_;
  const double norm = -kLogSqrt2Pi - std::log(sigma_);
  rng.fill_normal(out);
  for (double& w : out) {
    const double z = y - (theta + tau_ * w);
    w = norm - 0.5 * z * z / var;
  }
}

// ---------------------------------------------------------------------------
// GaussScale

GaussScale::GaussScale(double latent_fraction) : fraction_(latent_fraction) {
  if (!(latent_fraction > 0.0 && latent_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "latent_fraction must lie in (0, 1)");
  }
}

Interval GaussScale::parameter_space() const { return {0.0, kInf}; }

double GaussScale::prior_logdensity(double x, double theta) const {
  return normal_logpdf(x, 0.0, fraction_ * theta * theta);
}

double GaussScale::prior_sample(double theta, CounterRng& rng) const {
  return std::sqrt(fraction_) * theta * rng.normal();
}

double GaussScale::cond_logdensity(double y, double x, double theta) const {
  return normal_logpdf(y, x, (1.0 - fraction_) * theta * theta);
}

std::optional<double> GaussScale::exact_logdensity(double y,
                                                   double theta) const {
  return normal_logpdf(y, 0.0, theta * theta);
}

std::optional<double> GaussScale::logdensity_derivative(double y, double theta,
                                                        int order) const {
  require_order(order);
  const double y2 = y * y;
  const double t2 = theta * theta;
  switch (order) {
    case 0: return exact_logdensity(y, theta);
    case 1: return (y2 / t2 - 1.0) / theta;
    case 2: return (1.0 - 3.0 * y2 / t2) / t2;
    case 3: return (-2.0 + 12.0 * y2 / t2) / (t2 * theta);
    default: return (6.0 - 60.0 * y2 / t2) / (t2 * t2);
  }
}

double GaussScale::data_sample(double theta, CounterRng& rng) const {
  return theta * rng.normal();
}

double GaussScale::moment_estimate(std::span<const double> data) const {
  double sum = 0.0;
  for (double y : data) sum += y * y;
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::kDegenerateData,
                "sum of squares is zero; scale estimate on the boundary");
  }
  return std::sqrt(sum / static_cast<double>(data.size()));
}

Interval GaussScale::data_range(double theta) const {
  return {-kSpan * theta, kSpan * theta};
}

Interval GaussScale::latent_range(double y, double theta) const {
  return {std::min(y, 0.0) - kSpan * theta, std::max(y, 0.0) + kSpan * theta};
}

void GaussScale::log_weights(double y, double theta, CounterRng& rng,
                             std::span<double> out) const {
  const double prior_sd = std::sqrt(fraction_) * theta;
  const double var = (1.0 - fraction_) * theta * theta;
  const double norm = -kLogSqrt2Pi - 0.5 * std::log(var);
  rng.fill_normal(out);
  for (double& w : out) {
    const double z = y - prior_sd * w;
    w = norm - 0.5 * z * z / var;
  }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Model> make_model(std::string_view name,
                                  const ModelParams& params) {
  if (name == "gauss-mean-latent") {
    return std::make_unique<GaussMeanLatent>(params.tau, params.sigma);
  }
  if (name == "gauss-scale") {
    return std::make_unique<GaussScale>(params.latent_fraction);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown model '" + std::string(name) + "'");
}

namespace {

void require_in_space(const Model& model, const ParameterPoint& theta) {
  if (!model.parameter_space().contains(theta.theta())) {
    throw Error(ErrorCode::kInvalidArgument,
                "theta outside the parameter space of " +
                    std::string(model.name()));
  }
}

}  // namespace

double exact_loglik(const Model& model, const ParameterPoint& theta,
                    const Dataset& data) {
  require_in_space(model, theta);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto term = model.exact_logdensity(data[i], theta.theta());
    if (!term) {
      throw Error(ErrorCode::kOracleUnavailable,
                  std::string(model.name()) + " has no exact density");
    }
    if (!std::isfinite(*term)) {
      throw Error(ErrorCode::kNonFiniteLikelihood,
                  "log density is not finite", i);
    }
    total += *term;
  }
  return total;
}

double score(const Model& model, const ParameterPoint& theta, double y) {
  require_in_space(model, theta);
  const auto d = model.logdensity_derivative(y, theta.theta(), 1);
  if (!d) {
    throw Error(ErrorCode::kOracleUnavailable,
                std::string(model.name()) + " has no score oracle");
  }
  return *d;
}

double fisher_info(const Model& model, const ParameterPoint& theta) {
  const double info = expectation(model, theta.theta(), [&](double y) {
    const double s = score(model, theta, y);
    return s * s;
  });
  return info;
}

Dataset sample_dataset(const Model& model, const ParameterPoint& theta,
                       std::size_t n, StreamKey stream) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  }
  CounterRng rng(stream);
  std::vector<double> ys(n);
  for (double& y : ys) y = model.data_sample(theta.theta(), rng);
  return Dataset(std::move(ys));
}

}  // namespace rlan
