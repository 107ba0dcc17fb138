#include "rlan/rlan_check.hpp"

#include <cmath>
#include <ostream>

#include "rlan/csv.hpp"
#include "rlan/errors.hpp"
#include "rlan/quadrature.hpp"

namespace rlan {

namespace {

double required_derivative(const Model& model, double y, double theta,
                           int order) {
  const auto d = model.logdensity_derivative(y, theta, order);
  if (!d) {
    throw Error(ErrorCode::kOracleUnavailable,
                std::string(model.name()) + " lacks a derivative of order " +
                    std::to_string(order));
  }
  return *d;
}

}  // namespace

double fourth_log_derivative_fd(const Model& model, double y, double theta) {
  const double h = 1e-2 * std::max(1.0, std::abs(theta));
  const auto central = [&](double step) {
    return (required_derivative(model, y, theta + step, 3) -
            required_derivative(model, y, theta - step, 3)) /
           (2.0 * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

std::array<double, 5> log_derivatives(const Model& model, double y,
                                      double theta) {
  std::array<double, 5> d{};
  for (int k = 0; k <= 3; ++k) d[k] = required_derivative(model, y, theta, k);
  const auto fourth = model.logdensity_derivative(y, theta, 4);
  d[4] = fourth ? *fourth : fourth_log_derivative_fd(model, y, theta);
  return d;
}

ScoreFamily score_family(std::span<const double, 5> l) {
  const double l1 = l[1];
  const double l2 = l[2];
  const double l3 = l[3];
  const double l4 = l[4];
  return {
      l1,
      l2 + 0.5 * l1 * l1,
      l3 + 1.5 * l1 * l2 + 0.25 * l1 * l1 * l1,
      l4 + 2.0 * l1 * l3 + 1.5 * l2 * l2 + 1.5 * l1 * l1 * l2 +
          0.125 * l1 * l1 * l1 * l1,
  };
}

ScoreFamily score_family(const Model& model, double y, double theta) {
  const auto l = log_derivatives(model, y, theta);
  return score_family(std::span<const double, 5>(l));
}

std::string_view to_string(ExpansionForm form) {
  switch (form) {
    case ExpansionForm::kScoreFamily: return "score-family";
    case ExpansionForm::kScoreFamilySquaredMean: return "score-family-squared-mean";
    case ExpansionForm::kTaylor: return "taylor";
  }
  return "?";
}

RlanCoefficients rlan_coefficients(const Model& model,
                                   const ParameterPoint& theta) {
  const double th = theta.theta();
  const auto moment = [&](auto&& f) {
    return expectation(model, th, [&](double y) {
      return f(score_family(model, y, th));
    });
  };
  RlanCoefficients c;
  auto& m = c.moments;
  c.info = moment([](const ScoreFamily& s) { return s.first * s.first; });
  m.first_cubed = moment([](const ScoreFamily& s) {
    return s.first * s.first * s.first;
  });
  m.second_first = moment([](const ScoreFamily& s) { return s.second * s.first; });
  m.third = moment([](const ScoreFamily& s) { return s.third; });
  m.first_fourth_power = moment([](const ScoreFamily& s) {
    const double q = s.first * s.first;
    return q * q;
  });
  m.second_squared = moment([](const ScoreFamily& s) { return s.second * s.second; });
  m.third_first = moment([](const ScoreFamily& s) { return s.third * s.first; });
  m.fourth = moment([](const ScoreFamily& s) { return s.fourth; });
  m.second = moment([](const ScoreFamily& s) { return s.second; });
  m.first_squared_second = moment([](const ScoreFamily& s) {
    return s.first * s.first * s.second;
  });

  if (!(c.info > 0.0)) {
    throw Error(ErrorCode::kNonpositiveInformation,
                "Fisher information is not positive");
  }

  c.w_cubic = m.first_cubed / 12.0 - m.second_first / 8.0 + m.third / 6.0;
  const double shared = -m.first_fourth_power / 32.0 - m.third_first / 12.0 +
                        m.fourth / 24.0;
  c.q_quartic = shared - m.second_squared / 16.0;
  c.q_quartic_squared_mean = shared - m.second * m.second / 16.0;
  c.w_taylor = m.first_cubed / 12.0 - m.second_first / 4.0 + m.third / 6.0;
  c.q_taylor = shared - m.second_squared / 16.0 + m.first_squared_second / 8.0;
  return c;
}

EmpiricalTerms compute_empirical_terms(const Model& model,
                                       const ParameterPoint& theta,
                                       const Dataset& data,
                                       const RlanCoefficients& coeffs) {
  double s = 0.0;
  double v = 0.0;
  double u = 0.0;
  for (double y : data.observations()) {
    const ScoreFamily f = score_family(model, y, theta.theta());
    s += f.first;
    v += f.second - coeffs.moments.second;
    u += f.first * f.first - coeffs.info;
  }
  const double root_n = std::sqrt(static_cast<double>(data.size()));
  return {s / root_n, v / root_n, u / root_n};
}

double expansion_remainder(const Model& model, const ParameterPoint& theta,
                           const Dataset& data, double t, double exponent,
                           const RlanCoefficients& coeffs, ExpansionForm form,
                           double t_bound) {
  if (!(std::abs(t) <= t_bound)) {
    throw Error(ErrorCode::kInvalidArgument, "|t| exceeds the configured bound");
  }
  const double rn = static_cast<double>(data.size());
  const double delta = std::pow(rn, -exponent);
  const ParameterPoint shifted(theta.theta() + delta * t, theta.bounds());
  const double diff =
      exact_loglik(model, shifted, data) - exact_loglik(model, theta, data);

  const EmpiricalTerms e = compute_empirical_terms(model, theta, data, coeffs);
  double w = coeffs.w_cubic;
  double q = coeffs.q_quartic;
  if (form == ExpansionForm::kScoreFamilySquaredMean) {
    q = coeffs.q_quartic_squared_mean;
  } else if (form == ExpansionForm::kTaylor) {
    w = coeffs.w_taylor;
    q = coeffs.q_taylor;
  }
  const double root_n = std::sqrt(rn);
  const double d2 = delta * delta;
  const double expansion =
      t * root_n * delta * e.s_n +
      t * t * (root_n * d2 * (0.5 * e.v_n - 0.25 * e.u_n) -
               0.5 * rn * d2 * coeffs.info) +
      t * t * t * rn * d2 * delta * w + t * t * t * t * rn * d2 * d2 * q;
  return diff - expansion;
}

double expansion_remainder(const Model& model, const ParameterPoint& theta,
                           const Dataset& data, double t, double exponent) {
  return expansion_remainder(model, theta, data, t, exponent,
                             rlan_coefficients(model, theta));
}

void write_coefficients_csv(std::ostream& out, std::span<const double> thetas,
                            std::span<const RlanCoefficients> coeffs) {
  CsvWriter csv(out);
  csv.header({"theta", "info", "w_cubic", "q_quartic", "q_quartic_squared_mean",
              "w_taylor", "q_taylor", "E_I1_cubed", "E_I2_I1", "E_I3",
              "E_I1_fourth", "E_I2_squared", "E_I3_I1", "E_I4", "E_I2",
              "E_I1sq_I2"});
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& c = coeffs[i];
    const auto& m = c.moments;
    csv.row(thetas[i], c.info, c.w_cubic, c.q_quartic, c.q_quartic_squared_mean,
            c.w_taylor, c.q_taylor, m.first_cubed, m.second_first, m.third,
            m.first_fourth_power, m.second_squared, m.third_first, m.fourth,
            m.second, m.first_squared_second);
  }
}

}  // namespace rlan
