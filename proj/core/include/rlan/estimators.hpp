#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rlan/design.hpp"
#include "rlan/polyfit.hpp"

namespace rlan {

enum class Method { kMcle, kOneStepRescaled, kOneStepClassical };
enum class Branch { kQuadraticVertex, kCubicLocalMax, kFallbackOneStep };

std::string_view to_string(Method method);
std::string_view to_string(Branch branch);

struct EstimatorResult {
  double theta_hat = 0.0;
  Method method = Method::kMcle;
  Branch branch = Branch::kQuadraticVertex;
  std::optional<CubicFit> fit;
  std::map<std::string, double> diagnostics;
};

struct CubicMax {
  double x;
  Branch branch;
};

// Local maximizer of g(x) = b1 x + b2 x^2 + b3 x^3, clipped to [-radius, radius].
// Throws NoInteriorMax when g has no local maximum, or when b2 >= 0 and the
// local maximum lies outside the range.
CubicMax maximize_cubic(double b1, double b2, double b3, double radius);

// center + beta1 / (-2 beta2). diagnostics["cubic_theta"] carries the full
// cubic maximizer when one exists. Throws DegenerateFit when beta2 >= 0 or the
// estimate leaves `bounds`.
EstimatorResult mcle(const CubicFit& fit, const GridSpec& grid,
                     Interval bounds = real_line());

// theta_star + s_n / (sqrt(n) info).
EstimatorResult one_step(double theta_star, double s_n, double info,
                         std::size_t n);

// One-step estimator with score and information read off the grid values by
// central differences around the center point.
EstimatorResult one_step_from_grid(const GridSpec& grid,
                                   std::span<const double> values);

// mcle, falling back to one_step_from_grid on DegenerateFit. If the grid
// curvature is not negative either, the grid center is returned with
// diagnostics["no_curvature"] = 1.
EstimatorResult estimate_with_fallback(const CubicFit& fit,
                                       const GridSpec& grid,
                                       std::span<const double> values,
                                       Interval bounds = real_line());

}  // namespace rlan
