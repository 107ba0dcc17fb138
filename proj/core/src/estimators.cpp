#include "rlan/estimators.hpp"

#include <cmath>
#include <limits>

#include "rlan/errors.hpp"

namespace rlan {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kMcle: return "MCLE";
    case Method::kOneStepRescaled: return "OneStepRescaled";
    case Method::kOneStepClassical: return "OneStepClassical";
  }
  return "?";
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::kQuadraticVertex: return "QuadraticVertex";
    case Branch::kCubicLocalMax: return "CubicLocalMax";
    case Branch::kFallbackOneStep: return "FallbackOneStep";
  }
  return "?";
}

CubicMax maximize_cubic(double b1, double b2, double b3, double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  }
  const auto clip = [radius](double x) {
    return std::clamp(x, -radius, radius);
  };
  if (b3 == 0.0) {
    if (b2 < 0.0) return {clip(-b1 / (2.0 * b2)), Branch::kQuadraticVertex};
    throw Error(ErrorCode::kNoInteriorMax, "quadratic is not concave");
  }
  // g'(x) = 3 b3 x^2 + 2 b2 x + b1; the local max is the root where
  // g''(x) = 2 b2 + 6 b3 x = -sqrt(disc) < 0.
  const double disc = 4.0 * b2 * b2 - 12.0 * b3 * b1;
  if (!(disc > 0.0)) {
    throw Error(ErrorCode::kNoInteriorMax, "cubic has no local maximum");
  }
  const double root = std::sqrt(disc);
  // Cancellation-free pair of roots of 3 b3 x^2 + 2 b2 x + b1.
  const double q = -0.5 * (2.0 * b2 + std::copysign(root, b2));
  double x1 = q / (3.0 * b3);
  double x2 = q != 0.0 ? b1 / q : x1;
  const auto curvature = [&](double x) { return 2.0 * b2 + 6.0 * b3 * x; };
  const double x = curvature(x1) < curvature(x2) ? x1 : x2;
  if (std::abs(x) > radius && b2 >= 0.0) {
    throw Error(ErrorCode::kNoInteriorMax,
                "local maximum lies outside the search range");
  }
  return {clip(x), Branch::kCubicLocalMax};
}

EstimatorResult mcle(const CubicFit& fit, const GridSpec& grid,
                     Interval bounds) {
  const double b1 = fit.beta[1];
  const double b2 = fit.beta[2];
  if (!(b2 < 0.0)) {
    throw Error(ErrorCode::kDegenerateFit,
                "quadratic coefficient is not negative");
  }
  EstimatorResult res;
  res.method = Method::kMcle;
  res.branch = Branch::kQuadraticVertex;
  res.theta_hat = grid.center + b1 / (-2.0 * b2);
  res.fit = fit;
  res.diagnostics["beta2"] = b2;
  const double radius = grid.half_width * grid.spacing;
  try {
    const CubicMax cm = maximize_cubic(b1, b2, fit.beta[3], radius);
    res.diagnostics["cubic_theta"] = grid.center + cm.x;
  } catch (const Error&) {
    res.diagnostics["cubic_theta"] = std::numeric_limits<double>::quiet_NaN();
  }
  if (!std::isfinite(res.theta_hat) || !bounds.contains(res.theta_hat)) {
    throw Error(ErrorCode::kDegenerateFit,
                "estimate leaves the parameter space");
  }
  return res;
}

EstimatorResult one_step(double theta_star, double s_n, double info,
                         std::size_t n) {
  if (!(info > 0.0)) {
    throw Error(ErrorCode::kNonpositiveInformation,
                "information must be positive");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  EstimatorResult res;
  res.method = Method::kOneStepRescaled;
  res.branch = Branch::kQuadraticVertex;
  res.theta_hat = theta_star + s_n / (std::sqrt(static_cast<double>(n)) * info);
  return res;
}

EstimatorResult one_step_from_grid(const GridSpec& grid,
                                   std::span<const double> values) {
  const auto c = static_cast<std::size_t>(grid.half_width);
  const double h = grid.spacing;
  const double slope = (values[c + 1] - values[c - 1]) / (2.0 * h);
  const double curvature =
      (values[c + 1] - 2.0 * values[c] + values[c - 1]) / (h * h);
  const double rn = static_cast<double>(grid.n);
  // l'(theta*) = sqrt(n) S_n and l''(theta*) = -n I.
  EstimatorResult res =
      one_step(grid.center, slope / std::sqrt(rn), -curvature / rn, grid.n);
  res.branch = Branch::kFallbackOneStep;
  return res;
}

EstimatorResult estimate_with_fallback(const CubicFit& fit,
                                       const GridSpec& grid,
                                       std::span<const double> values,
                                       Interval bounds) {
  try {
    return mcle(fit, grid, bounds);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateFit) throw;
  }
  EstimatorResult res;
  try {
    res = one_step_from_grid(grid, values);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonpositiveInformation) throw;
    res.method = Method::kOneStepRescaled;
    res.branch = Branch::kFallbackOneStep;
    res.theta_hat = grid.center;
    res.diagnostics["no_curvature"] = 1.0;
  }
  if (!bounds.contains(res.theta_hat)) {
    res.theta_hat = grid.center;
    res.diagnostics["no_curvature"] = 1.0;
  }
  res.fit = fit;
  return res;
}

}  // namespace rlan
