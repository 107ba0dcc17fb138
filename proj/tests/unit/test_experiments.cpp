#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "rlan/errors.hpp"
#include "rlan/experiments.hpp"

using namespace rlan;

namespace {

ScalingConfig small_config() {
  ScalingConfig cfg;
  cfg.model_name = "gauss-scale";
  cfg.true_theta = 1.0;
  cfg.n_ladder = {64};
  cfg.replicates = 100;
  return cfg;
}

bool same(const EstimatorResult& a, const EstimatorResult& b) {
  return a.theta_hat == b.theta_hat && a.branch == b.branch &&
         a.method == b.method;
}

}  // namespace

TEST_CASE("config validation") {
  auto cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.m_exponent = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.m_exponent = 0.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.J = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.replicates = 99;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config();
  cfg.delta_exponent = 0.3;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("draw budget") {
  CHECK(mc_draws(256, 0.75) == 64);
  CHECK(mc_draws(4096, 0.75) == 512);
  CHECK(mc_draws(100, 0.75) == 32);  // 31.62 rounds up
  CHECK(mc_draws(10000, 0.5) == 100);
}

TEST_CASE("replicates are deterministic") {
  const auto cfg = small_config();
  GaussScale model;
  const auto a = run_replicate(model, cfg, 64, 3);
  const auto b = run_replicate(model, cfg, 64, 3);
  CHECK(same(a.mc, b.mc));
  CHECK(same(a.exact, b.exact));
  CHECK(a.grid.points == b.grid.points);
  CHECK(a.simulations == 64u * mc_draws(64, 0.75) * 21u);
  const auto c = run_replicate(model, cfg, 64, 4);
  CHECK(c.exact.theta_hat != a.exact.theta_hat);
}

TEST_CASE("exact-only replicates have identical arms") {
  auto cfg = small_config();
  cfg.exact_only = true;
  GaussScale model;
  const auto r = run_replicate(model, cfg, 64, 0);
  CHECK(same(r.mc, r.exact));
  CHECK(r.simulations == 0);
}

TEST_CASE("grid spans the configured half-width") {
  const auto cfg = small_config();
  GaussScale model;
  const auto r = run_replicate(model, cfg, 64, 0);
  REQUIRE(r.grid.size() == 21);
  CHECK(r.grid.points.back() - r.grid.center ==
        doctest::Approx(std::pow(64.0, -0.25)));
  CHECK(r.grid.center == r.theta_star);
}

TEST_CASE("exact-only study has zero Monte Carlo error") {
  auto cfg = small_config();
  cfg.exact_only = true;
  cfg.n_ladder = {64, 256};
  const auto report = scaling_study(cfg);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.info == doctest::Approx(2.0).epsilon(1e-9));
  for (const auto& row : report.rows) {
    CHECK(row.se_mc_hat == 0.0);
    CHECK(row.ratio_sq == 0.0);
    CHECK(row.se_stat_hat > 0.0);
    CHECK(row.fallback_rate >= 0.0);
    CHECK(row.fallback_rate <= 1.0);
    CHECK(row.se_stat == doctest::Approx(1 / std::sqrt(2.0 * row.n)));
  }
}

TEST_CASE("study summary and CSV are thread independent") {
  auto cfg = small_config();
  cfg.n_ladder = {16, 64};
  std::ostringstream one;
  write_scaling_csv(one, scaling_study(cfg));
  cfg.threads = 3;
  std::ostringstream three;
  write_scaling_csv(three, scaling_study(cfg));
  const std::string text = one.str();
  CHECK(text == three.str());
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("summary statistics against a direct computation") {
  std::vector<ReplicateResult> reps(4);
  const double exact[] = {1.0, 1.2, 0.9, 1.1};
  const double mc[] = {1.05, 1.15, 0.95, 1.1};
  for (int i = 0; i < 4; ++i) {
    reps[i].exact.theta_hat = exact[i];
    reps[i].mc.theta_hat = mc[i];
    reps[i].simulations = 10;
  }
  reps[2].mc.branch = Branch::kFallbackOneStep;
  const auto row = summarize(reps, 100, 5, 2.0);
  std::vector<double> e(exact, exact + 4), d;
  for (int i = 0; i < 4; ++i) d.push_back(mc[i] - exact[i]);
  CHECK(row.se_stat_hat == doctest::Approx(std::sqrt(oracle::mean_var(e).var)));
  CHECK(row.se_mc_hat == doctest::Approx(std::sqrt(oracle::mean_var(d).var)));
  CHECK(row.mean_bias == doctest::Approx(oracle::mean_var(d).mean));
  CHECK(row.ratio_sq == doctest::Approx(oracle::mean_var(d).var / oracle::mean_var(e).var));
  CHECK(row.fallback_rate == 0.25);
  CHECK(row.simulations == 40);
  CHECK(row.se_stat == doctest::Approx(0.1 / std::sqrt(2.0)));
}

TEST_CASE("synthetic log-likelihood surface") {
  const auto rows = figure1_surface(100, 0.25, 0.5, 1);
  REQUIRE(rows.size() == 21);
  CHECK(rows.front().theta == doctest::Approx(-std::pow(100.0, -0.25)));
  CHECK(rows.front().exact == doctest::Approx(-10.0));
  CHECK(rows.back().exact == doctest::Approx(-10.0));
  CHECK(rows[10].exact == doctest::Approx(0.0).scale(1.0));

  const auto quiet = figure1_surface(100, 0.25, std::numeric_limits<double>::infinity(), 1);
  for (const auto& p : quiet) CHECK(p.noisy == p.exact);

  // Residual spread matches sqrt(n / m) = sqrt(10) over many seeds.
  std::vector<double> resid;
  for (std::uint64_t s = 0; s < 400; ++s) {
    for (const auto& p : figure1_surface(100, 0.25, 0.5, s)) resid.push_back(p.noisy - p.exact);
  }
  CHECK(std::sqrt(oracle::mean_var(resid).var) == doctest::Approx(std::sqrt(10.0)).epsilon(0.05));

  const auto big = figure1_surface(1000000, 0.5, 0.5, 1);
  CHECK(big.back().exact == doctest::Approx(-1.0));
  CHECK_THROWS_AS(figure1_surface(3, 0.25, 0.5, 1), Error);
}

TEST_CASE("signal-to-noise table") {
  const std::vector<std::size_t> ladder{100, 10000, 1000000};
  const auto rows = snr_table(ladder, 0.5);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    const double n = static_cast<double>(r.n);
    CHECK(r.snr == doctest::Approx(std::pow(n, r.exponent == 0.25 ? 0.25 : -0.25)));
    if (r.n == 10000 && r.exponent == 0.25) {
      CHECK(r.signal_span == doctest::Approx(100.0));
      CHECK(r.noise_sd == doctest::Approx(10.0));
      CHECK(r.snr == doctest::Approx(10.0));
    }
  }
}
