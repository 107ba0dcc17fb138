#pragma once

#include <functional>

#include "rlan/model.hpp"

namespace rlan {

inline constexpr double kQuadratureTolerance = 1e-9;

// Adaptive Gauss-Kronrod (61 point) on a finite range. Throws
// QuadratureFailure when the error estimate exceeds abs_tol.
double integrate(const std::function<double(double)>& f, Interval range,
                 double abs_tol = kQuadratureTolerance);

// E_theta[f(Y)] against the model's exact data density.
double expectation(const Model& model, double theta,
                   const std::function<double(double)>& f,
                   double abs_tol = kQuadratureTolerance);

}  // namespace rlan
