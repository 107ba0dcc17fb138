#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace rlan {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

inline double normal_logpdf(double x, double mean, double variance) {
  const double z = x - mean;
  return -kLogSqrt2Pi - 0.5 * std::log(variance) - 0.5 * z * z / variance;
}

// log((1/k) * sum exp(v_i)) with the max shifted out. Returns -inf when every
// entry is -inf.
inline double log_mean_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum / static_cast<double>(values.size()));
}

}  // namespace rlan
