#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "rlan/errors.hpp"
#include "rlan/polyfit.hpp"

using namespace rlan;

namespace {

GridSpec unit_grid(int J, double spacing, double center = 0.0) {
  GridSpec g;
  g.center = center;
  g.spacing = spacing;
  g.half_width = J;
  for (int j = -J; j <= J; ++j) g.points.push_back(center + j * spacing);
  return g;
}

}  // namespace

TEST_CASE("design matrix rows and column sums") {
  const auto d = build_design(unit_grid(2, 1.0));
  REQUIRE(d.rows.size() == 5);
  CHECK(d.rows[0] == std::array<double, 4>{1, -2, 4, -8});
  std::array<double, 4> sums{};
  for (const auto& r : d.rows) {
    CHECK(r[0] == 1.0);
    for (int k = 0; k < 4; ++k) sums[k] += r[k];
  }
  CHECK(sums == std::array<double, 4>{5, 0, 10, 0});

  const auto half = build_design(unit_grid(2, 0.5));
  double col2 = 0;
  for (const auto& r : half.rows) col2 += r[2];
  CHECK(col2 == doctest::Approx(2.5));
}

TEST_CASE("closed J=2 determinant and cofactors match brute force") {
  const auto d = build_design(unit_grid(2, 1.0));
  const auto g = oracle::power_gram(2, 1.0);
  CHECK(det_xtx(d) == 10080.0);
  CHECK(oracle::det_elim<4>(g) == doctest::Approx(10080.0));
  CHECK(oracle::det3({{{5, 10, 0}, {10, 34, 0}, {0, 0, 130}}}) == 9100.0);
  CHECK(oracle::det3({{{5, 0, 0}, {0, 10, 34}, {0, 34, 130}}}) == 720.0);
  const auto adj = adj_diagonals(d);
  CHECK(adj.adj22 == 9100.0);
  CHECK(adj.adj33 == 720.0);
  CHECK(adj.adj22 == oracle::principal_minor(g, 1));
  CHECK(adj.adj33 == oracle::principal_minor(g, 2));
}

TEST_CASE("adjugate times matrix is det times identity") {
  for (double h : {1.0, 0.3, 0.05}) {
    const auto d = build_design(unit_grid(4, h));
    const Matrix4 a = gram(d);
    const Matrix4 adj = adjugate(a);
    const double det = determinant(a);
    CHECK(det == doctest::Approx(oracle::det_elim<4>(a)).epsilon(1e-10));
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += adj[r][k] * a[k][c];
        CHECK(s == doctest::Approx(r == c ? det : 0.0).scale(std::abs(det)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("Gram matrix structure") {
  const auto d = build_design(unit_grid(5, 0.2));
  const Matrix4 a = gram(d);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) CHECK(a[r][c] == a[c][r]);
  }
  const double scale = a[0][0];
  CHECK(std::abs(a[0][1]) <= 1e-12 * scale);
  CHECK(std::abs(a[0][3]) <= 1e-12 * scale);
  CHECK(std::abs(a[1][2]) <= 1e-12 * scale);
  CHECK(std::abs(a[2][3]) <= 1e-12 * scale);
  CHECK(determinant(a) > 0);
}

TEST_CASE("determinant and adjugate scaling in n") {
  const auto det_at = [](double n) {
    return det_xtx(build_design(unit_grid(2, std::pow(n, -0.25))));
  };
  const auto adj22_at = [](double n) {
    return adj_diagonals(build_design(unit_grid(2, std::pow(n, -0.25)))).adj22;
  };
  for (double n : {256.0, 4096.0}) {
    CHECK(det_at(n) / det_at(16 * n) == doctest::Approx(4096.0).epsilon(0.01));
    CHECK(adj22_at(n) / adj22_at(16 * n) == doctest::Approx(1024.0).epsilon(0.01));
  }
  double previous = 1e300;
  for (double h = 1.0; h > 1e-3; h /= 2) {
    const double det = det_xtx(build_design(unit_grid(3, h)));
    CHECK(det < previous);
    previous = det;
  }
}

TEST_CASE("least squares recovers a cubic") {
  const auto grid = unit_grid(10, 0.1, 0.4);
  const auto d = build_design(grid);
  std::vector<double> y;
  for (int j = -10; j <= 10; ++j) {
    const double x = j * 0.1;
    y.push_back(1 + 2 * x - 3 * x * x + 0.5 * x * x * x);
  }
  const auto fit = lsq_fit(d, y);
  CHECK(fit.beta[0] == doctest::Approx(1).epsilon(1e-9));
  CHECK(fit.beta[1] == doctest::Approx(2).epsilon(1e-9));
  CHECK(fit.beta[2] == doctest::Approx(-3).epsilon(1e-9));
  CHECK(fit.beta[3] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fit.residual_ss <= 1e-18);
  CHECK(fit.xtx_det > 0);
}

TEST_CASE("zero values give a zero fit") {
  const auto d = build_design(unit_grid(3, 1.0));
  const std::vector<double> y(7, 0.0);
  const auto fit = lsq_fit(d, y);
  for (double b : fit.beta) CHECK(b == 0.0);
  CHECK(fit.residual_ss == 0.0);
}

TEST_CASE("quartic data against the normal-equations oracle") {
  const auto d = build_design(unit_grid(3, 1.0));
  std::vector<double> y;
  for (int j = -3; j <= 3; ++j) y.push_back(std::pow(j, 4));
  const auto fit = lsq_fit(d, y);
  CHECK(fit.beta[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.beta[3] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  const auto g = oracle::power_gram(3, 1.0);
  std::array<double, 4> rhs{};
  for (int j = -3; j <= 3; ++j) {
    for (int k = 0; k < 4; ++k) rhs[k] += std::pow(j, k) * std::pow(j, 4);
  }
  const auto beta = oracle::solve<4>(g, rhs);
  CHECK(fit.beta[0] == doctest::Approx(beta[0]).epsilon(1e-12));
  CHECK(fit.beta[2] == doctest::Approx(beta[2]).epsilon(1e-12));
  CHECK(fit.residual_ss > 0);
}

TEST_CASE("random data against the normal-equations oracle") {
  rlan::CounterRng rng(rlan::StreamKey(99));
  const double h = std::pow(4096.0, -0.25) / 10;
  const auto grid = unit_grid(10, h, 1.0);
  const auto d = build_design(grid);
  std::vector<double> y(21);
  for (double& v : y) v = -5000 + 10 * rng.normal();
  const auto fit = lsq_fit(d, y);
  const auto g = oracle::power_gram(10, h);
  std::array<double, 4> rhs{};
  for (int j = -10; j <= 10; ++j) {
    for (int k = 0; k < 4; ++k) rhs[k] += std::pow(j * h, k) * y[j + 10];
  }
  const auto beta = oracle::solve<4>(g, rhs);
  for (int k = 0; k < 4; ++k) {
    CHECK(fit.beta[k] == doctest::Approx(beta[k]).epsilon(1e-6));
  }
}

TEST_CASE("ill-conditioned design is rejected") {
  const auto d = build_design(unit_grid(2, 1e-5));
  const std::vector<double> y(5, 1.0);
  try {
    (void)lsq_fit(d, y);
    FAIL("expected SingularDesign");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularDesign);
  }
}

TEST_CASE("fit CSV layout") {
  const auto grid = unit_grid(2, 1.0);
  const std::vector<double> y{1, 2, 3, 4, 5};
  const auto fit = lsq_fit(build_design(grid), y);
  std::ostringstream out;
  write_fit_csv_header(out);
  write_fit_csv_row(out, grid, fit);
  const auto text = out.str();
  CHECK(text.rfind("n,J,delta,beta0,beta1,beta2,beta3,det,adj22,adj33,residual_ss\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
