#include "rlan/design.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rlan/errors.hpp"

namespace rlan {

double preliminary_estimate(const Model& model, const Dataset& data) {
  if (data.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "preliminary estimate needs n >= 2");
  }
  const double raw = model.moment_estimate(data.observations());
  if (!std::isfinite(raw)) {
    throw Error(ErrorCode::kDegenerateData, "moment statistic is not finite");
  }
  const Interval space = model.parameter_space();
  if (space.contains(raw)) return raw;
  // Clamp strictly inside the open interval.
  if (raw <= space.lower) {
    return std::nextafter(space.lower, std::numeric_limits<double>::infinity());
  }
  return std::nextafter(space.upper, -std::numeric_limits<double>::infinity());
}

double discretize(double theta_tilde, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  const double width = 1.0 / std::sqrt(static_cast<double>(n));
  const double cell = std::floor(theta_tilde / width);
  return (cell + 0.5) * width;
}

GridSpec build_grid(double center, std::size_t n, int J, double exponent,
                    double scale, Interval bounds) {
  if (J < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "J must be >= 2 (a cubic fit needs at least 4 points)");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (std::abs(exponent - 0.25) > 1e-12 && std::abs(exponent - 0.5) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "grid exponent must be 1/4 or 1/2");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "grid scale must be positive");
  }
  GridSpec grid;
  grid.center = center;
  grid.n = n;
  grid.exponent = exponent;
  grid.half_width = J;
  grid.spacing = scale * std::pow(static_cast<double>(n), -exponent);
  grid.points.resize(2 * static_cast<std::size_t>(J) + 1);
  std::ostringstream bad;
  bool out_of_bounds = false;
  for (int j = -J; j <= J; ++j) {
    const double p = center + j * grid.spacing;
    grid.points[static_cast<std::size_t>(j + J)] = p;
    if (!bounds.contains(p)) {
      bad << (out_of_bounds ? ", " : "") << p;
      out_of_bounds = true;
    }
  }
  if (out_of_bounds) {
    throw Error(ErrorCode::kGridOutOfBounds,
                "grid points outside the parameter space: " + bad.str());
  }
  return grid;
}

}  // namespace rlan
