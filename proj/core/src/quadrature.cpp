#include "rlan/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rlan/errors.hpp"

namespace rlan {

double integrate(const std::function<double(double)>& f, Interval range,
                 double abs_tol) {
  if (!(std::isfinite(range.lower) && std::isfinite(range.upper)) ||
      !(range.lower < range.upper)) {
    throw Error(ErrorCode::kInvalidArgument, "integration range must be finite");
  }
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, range.lower, range.upper, 20, 1e-14, &error, &l1);
  // Floor the acceptance threshold at what double rounding allows.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (!std::isfinite(value) || error > abs_tol + floor) {
    std::ostringstream msg;
    msg << "error estimate " << error << " exceeds tolerance " << abs_tol;
    throw Error(ErrorCode::kQuadratureFailure, msg.str());
  }
  return value;
}

double expectation(const Model& model, double theta,
                   const std::function<double(double)>& f, double abs_tol) {
  const auto integrand = [&](double y) {
    const auto logp = model.exact_logdensity(y, theta);
    if (!logp) {
      throw Error(ErrorCode::kOracleUnavailable,
                  std::string(model.name()) + " has no exact density");
    }
    const double p = std::exp(*logp);
    return p == 0.0 ? 0.0 : f(y) * p;
  };
  return integrate(integrand, model.data_range(theta), abs_tol);
}

}  // namespace rlan
