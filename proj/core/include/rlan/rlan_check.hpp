#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string_view>

#include "rlan/model.hpp"

namespace rlan {

// Derivatives of log p in theta, orders 0..4. Order 4 falls back to a
// Richardson-extrapolated central difference of order 3 when the model has
// no closed form for it.
std::array<double, 5> log_derivatives(const Model& model, double y,
                                      double theta);

// Central difference of the analytic third log-density derivative, one
// Richardson step.
double fourth_log_derivative_fd(const Model& model, double y, double theta);

// 2 s^{(k)} / s for s = sqrt(p), k = 1..4, written through log-density
// derivatives.
struct ScoreFamily {
  double first;   // l'
  double second;  // l'' + l'^2 / 2
  double third;   // l''' + 3/2 l' l'' + l'^3 / 4
  double fourth;  // l'''' + 2 l' l''' + 3/2 l''^2 + 3/2 l'^2 l'' + l'^4 / 8
};

ScoreFamily score_family(std::span<const double, 5> log_derivs);
ScoreFamily score_family(const Model& model, double y, double theta);

struct RlanMoments {
  double first_cubed;          // E[I'^3]
  double second_first;         // E[I'' I']
  double third;                // E[I''']
  double first_fourth_power;   // E[I'^4]
  double second_squared;       // E[I''^2]
  double third_first;          // E[I''' I']
  double fourth;               // E[I'''']
  double second;               // E[I'']
  double first_squared_second; // E[I'^2 I'']
};

struct RlanCoefficients {
  double info = 0.0;
  // Cubic and quartic brackets written in score-family moments, with the
  // "E[I'']^2" term read as a second moment.
  double w_cubic = 0.0;
  double q_quartic = 0.0;
  // Same quartic bracket with that term read as the squared mean.
  double q_quartic_squared_mean = 0.0;
  // Brackets re-derived from the Taylor series of 2 log(s(theta+h)/s(theta));
  // they reduce to E[l''']/6 and E[l'''']/24.
  double w_taylor = 0.0;
  double q_taylor = 0.0;
  RlanMoments moments{};
};

enum class ExpansionForm { kScoreFamily, kScoreFamilySquaredMean, kTaylor };

std::string_view to_string(ExpansionForm form);

struct EmpiricalTerms {
  double s_n;
  double v_n;
  double u_n;
};

inline constexpr double kDefaultTBound = 2.0;

// Population moments by adaptive quadrature.
RlanCoefficients rlan_coefficients(const Model& model,
                                   const ParameterPoint& theta);

EmpiricalTerms compute_empirical_terms(const Model& model,
                                       const ParameterPoint& theta,
                                       const Dataset& data,
                                       const RlanCoefficients& coeffs);

// l(theta + t n^{-exponent}) - l(theta) minus the four bracketed expansion
// terms. Requires |t| <= t_bound and the shifted point inside the parameter
// space.
double expansion_remainder(const Model& model, const ParameterPoint& theta,
                           const Dataset& data, double t, double exponent,
                           const RlanCoefficients& coeffs,
                           ExpansionForm form = ExpansionForm::kScoreFamily,
                           double t_bound = kDefaultTBound);

double expansion_remainder(const Model& model, const ParameterPoint& theta,
                           const Dataset& data, double t, double exponent);

// Columns: theta,info,w_cubic,q_quartic,q_quartic_squared_mean,w_taylor,
// q_taylor, then every moment.
void write_coefficients_csv(std::ostream& out,
                            std::span<const double> thetas,
                            std::span<const RlanCoefficients> coeffs);

}  // namespace rlan
