#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "rlan/errors.hpp"
#include "rlan/rlan_check.hpp"

using namespace rlan;

namespace {

// Forwards to GaussScale but hides the closed-form fourth derivative.
class NoFourthDerivative final : public Model {
 public:
  std::string_view name() const override { return "no-fourth"; }
  Interval parameter_space() const override { return inner_.parameter_space(); }
  double prior_logdensity(double x, double t) const override { return inner_.prior_logdensity(x, t); }
  double prior_sample(double t, CounterRng& r) const override { return inner_.prior_sample(t, r); }
  double cond_logdensity(double y, double x, double t) const override { return inner_.cond_logdensity(y, x, t); }
  std::optional<double> exact_logdensity(double y, double t) const override { return inner_.exact_logdensity(y, t); }
  std::optional<double> logdensity_derivative(double y, double t, int k) const override {
    if (k == 4) return std::nullopt;
    return inner_.logdensity_derivative(y, t, k);
  }
  double data_sample(double t, CounterRng& r) const override { return inner_.data_sample(t, r); }
  double moment_estimate(std::span<const double> d) const override { return inner_.moment_estimate(d); }
  Interval data_range(double t) const override { return inner_.data_range(t); }
  Interval latent_range(double y, double t) const override { return inner_.latent_range(y, t); }

 private:
  GaussScale inner_;
};

// 2 s^{(k)} / s by finite differences of s = sqrt(p).
std::array<double, 4> score_family_fd(const Model& model, double y, double theta) {
  const auto s = [&](double t) { return std::exp(0.5 * *model.exact_logdensity(y, t)); };
  const double s0 = s(theta);
  std::array<double, 4> out{};
  for (int k = 1; k <= 4; ++k) out[k - 1] = 2 * oracle::derivative(s, theta, k, 0.02) / s0;
  return out;
}

}  // namespace

TEST_CASE("score family matches derivatives of sqrt(p)") {
  GaussScale scale;
  GaussMeanLatent mean(0.8, 0.6);
  for (const Model* model : {static_cast<const Model*>(&scale),
                             static_cast<const Model*>(&mean)}) {
    for (double y : {-1.2, 0.3, 2.0}) {
      const double theta = 1.1;
      const auto f = score_family(*model, y, theta);
      const auto fd = score_family_fd(*model, y, theta);
      CHECK(f.first == doctest::Approx(fd[0]).epsilon(1e-6));
      CHECK(f.second == doctest::Approx(fd[1]).epsilon(1e-5));
      CHECK(f.third == doctest::Approx(fd[2]).epsilon(1e-4));
      CHECK(f.fourth == doctest::Approx(fd[3]).epsilon(1e-4));
    }
  }
}

TEST_CASE("fourth derivative falls back to finite differences") {
  NoFourthDerivative hidden;
  GaussScale scale;
  for (double y : {-2.0, 0.5, 1.0}) {
    const auto d = log_derivatives(hidden, y, 1.3);
    const double analytic = *scale.logdensity_derivative(y, 1.3, 4);
    CHECK(d[4] == doctest::Approx(analytic).epsilon(1e-6));
    CHECK(fourth_log_derivative_fd(scale, y, 1.3) ==
          doctest::Approx(analytic).epsilon(1e-6));
  }
}

TEST_CASE("information identity 2E[I''] = -I") {
  GaussScale scale;
  for (double theta : {1.0, std::sqrt(2.0), std::sqrt(3.0)}) {
    const auto c = rlan_coefficients(scale, scale.point(theta));
    CHECK(c.info > 0);
    CHECK(std::abs(2 * c.moments.second + c.info) <= 1e-6);
    CHECK(std::abs(c.info - 2 / (theta * theta)) <= 1e-6);
  }
  GaussMeanLatent mean(1.3, 0.4);
  CounterRng rng(StreamKey(4));
  for (int i = 0; i < 5; ++i) {
    const double theta = 3 * rng.normal();
    const auto c = rlan_coefficients(mean, mean.point(theta));
    CHECK(std::abs(2 * c.moments.second + c.info) <= 1e-6);
  }
}

TEST_CASE("population coefficients for the scale model") {
  GaussScale scale;
  const auto c = rlan_coefficients(scale, scale.point(1.0));
  // Gaussian moments of y ~ N(0, 1) worked by hand.
  CHECK(c.info == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(c.moments.first_cubed == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(c.moments.second_first == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(c.moments.third == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(c.moments.first_fourth_power == doctest::Approx(60.0).epsilon(1e-9));
  CHECK(c.moments.second_squared == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(c.moments.third_first == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(c.moments.fourth == doctest::Approx(-7.5).epsilon(1e-9));
  CHECK(c.moments.second == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(c.w_cubic == doctest::Approx(17.0 / 12).epsilon(1e-9));
  CHECK(c.q_quartic == doctest::Approx(-2.5).epsilon(1e-9));
  CHECK(c.q_quartic_squared_mean == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("Taylor brackets reduce to plain log-derivative moments") {
  GaussScale scale;
  for (double theta : {0.7, 1.0, 2.5}) {
    const auto c = rlan_coefficients(scale, scale.point(theta));
    // E[l'''] = 10 / theta^3 and E[l''''] = -54 / theta^4 under N(0, theta^2).
    CHECK(c.w_taylor == doctest::Approx(10.0 / 6 / std::pow(theta, 3)).epsilon(1e-8));
    CHECK(c.q_taylor == doctest::Approx(-54.0 / 24 / std::pow(theta, 4)).epsilon(1e-8));
    const double ql = oracle::simpson(
        [&](double y) {
          return *scale.logdensity_derivative(y, theta, 4) *
                 oracle::normal_pdf(y, 0, theta * theta);
        },
        -14 * theta, 14 * theta);
    CHECK(c.q_taylor == doctest::Approx(ql / 24).epsilon(1e-8));
  }
}

TEST_CASE("location model has no odd coefficients") {
  GaussMeanLatent mean;
  const auto c = rlan_coefficients(mean, mean.point(0.4));
  CHECK(std::abs(c.moments.first_cubed) < 1e-9);
  CHECK(std::abs(c.moments.second_first) < 1e-9);
  CHECK(std::abs(c.moments.third) < 1e-9);
  CHECK(std::abs(c.w_cubic) < 1e-9);
  CHECK(std::abs(c.w_taylor) < 1e-9);
  CHECK(std::abs(c.q_taylor) < 1e-9);
  CHECK(c.info == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("empirical terms closed cases") {
  GaussScale scale;
  const auto c = rlan_coefficients(scale, scale.point(1.0));
  const auto e = compute_empirical_terms(scale, scale.point(1.0), Dataset({1.0, -1.0}), c);
  CHECK(e.s_n == doctest::Approx(0.0).scale(1.0));
  CHECK(e.u_n == doctest::Approx(-2 * std::sqrt(2.0)).epsilon(1e-9));

  // Score 3 at theta = 1 needs y^2 = 4, i.e. y = 2.
  const auto one = compute_empirical_terms(scale, scale.point(1.0), Dataset({2.0}), c);
  CHECK(one.s_n == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(one.u_n == doctest::Approx(7.0).epsilon(1e-9));
}

TEST_CASE("empirical score is asymptotically N(0, I)") {
  GaussScale scale;
  const auto c = rlan_coefficients(scale, scale.point(1.0));
  std::vector<double> s;
  for (std::uint64_t r = 0; r < 500; ++r) {
    const auto data = sample_dataset(scale, scale.point(1.0), 10000, StreamKey(91).child(r));
    s.push_back(compute_empirical_terms(scale, scale.point(1.0), data, c).s_n);
  }
  CHECK(oracle::mean_var(s).var == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("location model remainders in closed form") {
  GaussMeanLatent mean;
  const double v = mean.marginal_variance();
  const auto c = rlan_coefficients(mean, mean.point(0.2));
  for (std::size_t n : {16u, 256u, 4096u}) {
    const auto data = sample_dataset(mean, mean.point(0.2), n, StreamKey(n));
    for (double t : {-2.0, -0.5, 1.0, 2.0}) {
      for (double ex : {0.25, 0.5}) {
        const double taylor = expansion_remainder(mean, mean.point(0.2), data, t, ex, c,
                                                  ExpansionForm::kTaylor);
        CHECK(std::abs(taylor) <= 1e-9);
        const double d4 = std::pow(double(n), -4 * ex);
        const double standard = expansion_remainder(mean, mean.point(0.2), data, t, ex, c);
        CHECK(std::abs(standard - n * d4 * std::pow(t, 4) / (16 * v * v)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("remainder at the LAN scale is small") {
  GaussScale scale;
  const auto c = rlan_coefficients(scale, scale.point(1.0));
  std::vector<double> r;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const auto data = sample_dataset(scale, scale.point(1.0), 10000, StreamKey(3).child(rep));
    r.push_back(std::abs(expansion_remainder(scale, scale.point(1.0), data, 1.0, 0.5, c)));
  }
  CHECK(oracle::quantile(r, 0.9) <= 0.5);
}

TEST_CASE("remainder preconditions") {
  GaussScale scale;
  const Dataset data({0.5, -0.2, 1.1, 0.9});
  CHECK_THROWS_AS(expansion_remainder(scale, scale.point(1.0), data, 3.0, 0.25), Error);
  // 1 - 2 * 4^{-1/4} < 0 leaves the parameter space.
  CHECK_THROWS_AS(expansion_remainder(scale, scale.point(1.0), data, -2.0, 0.25), Error);
}

TEST_CASE("coefficient CSV layout") {
  GaussScale scale;
  const std::vector<double> thetas{1.0};
  const std::vector<RlanCoefficients> coeffs{rlan_coefficients(scale, scale.point(1.0))};
  std::ostringstream out;
  write_coefficients_csv(out, thetas, coeffs);
  const auto text = out.str();
  CHECK(text.rfind("theta,info,w_cubic,q_quartic,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
