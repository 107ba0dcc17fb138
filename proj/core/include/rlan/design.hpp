#pragma once

#include <cstddef>
#include <vector>

#include "rlan/model.hpp"

namespace rlan {

// Evaluation grid points[j + J] = center + j * spacing, j = -J..J.
struct GridSpec {
  double center = 0.0;
  double spacing = 0.0;
  int half_width = 0;  // J
  std::vector<double> points;
  std::size_t n = 0;
  double exponent = 0.25;

  std::size_t size() const { return points.size(); }
  double offset(int j) const { return j * spacing; }
};

// Method-of-moments estimate clamped into the model's parameter space.
// Requires n >= 2.
double preliminary_estimate(const Model& model, const Dataset& data);

// Midpoint of the n^{-1/2}-wide lattice cell [k w, (k+1) w) containing
// theta_tilde.
double discretize(double theta_tilde, std::size_t n);

// Grid with spacing scale * n^{-exponent}; exponent must be 1/4 or 1/2 and
// J >= 2. Every point must lie inside `bounds`, otherwise GridOutOfBounds.
GridSpec build_grid(double center, std::size_t n, int J, double exponent,
                    double scale = 1.0, Interval bounds = real_line());

}  // namespace rlan
