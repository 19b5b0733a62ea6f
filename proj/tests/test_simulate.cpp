#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "monoband/io.hpp"
#include "monoband/rng.hpp"
#include "monoband/simulate.hpp"

using namespace monoband;

TEST_CASE("config validation") {
  SimConfig config;
  config.n_runs = 0;
  CHECK_THROWS_AS(run_coverage(config), std::invalid_argument);

  SimConfig shallow;
  shallow.method = Method::variance;
  shallow.t_max = 5;
  shallow.n_runs = 3;
  CHECK_THROWS_AS(run_coverage(shallow), std::domain_error);

  SimConfig bad_delta;
  bad_delta.delta = 0.0;
  CHECK_THROWS_AS(run_coverage(bad_delta), std::domain_error);
}

TEST_CASE("reports are deterministic across thread counts") {
  SimConfig config;
  config.dist = DistributionSpec::sine6();
  config.method = Method::kl_cdf;
  config.n_runs = 40;
  config.t_max = 60;
  config.seed = 12345;
  config.threads = 1;
  const auto one = run_coverage(config);
  config.threads = 4;
  const auto four = run_coverage(config);
  CHECK(report_to_json(one) == report_to_json(four));
  CHECK(report_to_csv(one) == report_to_csv(four));
}

TEST_CASE("degenerate confidence level runs without incident") {
  SimConfig config;
  config.delta = 1.0;
  config.n_runs = 10;
  config.t_max = 30;
  const auto report = run_coverage(config);
  CHECK(report.n_runs == 10);
  CHECK(report.miss_rate >= 0.0);
  CHECK(report.miss_rate <= 1.0);
}

TEST_CASE("small coverage runs stay within the slack bound") {
  for (const Method m : {Method::kl_cdf, Method::anytime_baseline}) {
    SimConfig config;
    config.method = m;
    config.n_runs = 60;
    config.t_max = 60;
    config.seed = 7;
    const auto report = run_coverage(config);
    const double slack =
        3.0 * std::sqrt(0.05 * 0.95 / static_cast<double>(config.n_runs));
    CHECK(report.miss_rate <= 0.05 + slack);
    CHECK(report.checkpoints.size() == 3);
    for (const auto& [p50, p90] : report.width_quantiles) {
      CHECK(p50 > 0.0);
      CHECK(p50 <= p90);
      CHECK(p90 <= 1.0);
    }
  }
}

TEST_CASE("dkw is evaluated only at the final time") {
  SimConfig config;
  config.method = Method::dkw;
  config.n_runs = 30;
  config.t_max = 50;
  const auto report = run_coverage(config);
  CHECK_FALSE(report.anytime);
  CHECK(report.miss_rate <= 0.2);
}

TEST_CASE("exclusion predicate agrees with the constructed band") {
  CounterRng rng(271);
  for (const Method m : {Method::psi, Method::kl_cdf, Method::kl_grid,
                         Method::pinsker, Method::variance, Method::dkw,
                         Method::anytime_baseline}) {
    for (int trial = 0; trial < 4; ++trial) {
      const std::size_t t = 12 + 7 * trial;
      SampleStore store;
      std::vector<double> sorted;
      for (std::size_t i = 0; i < t; ++i) {
        const double x = rng.next_unit();
        store.insert(x);
        sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), x), x);
      }
      std::vector<double> grid = uniform_grid(9);
      std::vector<double> check_points = grid;
      check_points.insert(check_points.end(), sorted.begin(), sorted.end());
      std::sort(check_points.begin(), check_points.end());
      check_points.erase(
          std::unique(check_points.begin(), check_points.end()),
          check_points.end());

      const BandQuery query{check_points, 0.2, m};
      const BandResult band = compute_band(store, query, 0);
      for (std::size_t i = 0; i < check_points.size(); ++i) {
        const double f_probe = rng.next_unit();
        const bool outside = f_probe < band.lower[i] - 1e-7 ||
                             f_probe > band.upper[i] + 1e-7;
        const bool inside = f_probe > band.lower[i] + 1e-7 &&
                            f_probe < band.upper[i] - 1e-7;
        const bool excluded = band_excludes(m, query.delta, sorted,
                                            check_points, check_points[i],
                                            f_probe);
        if (outside) CHECK(excluded);
        if (inside) CHECK_FALSE(excluded);
      }
    }
  }
}

TEST_CASE("width profiles") {
  const auto dist = DistributionSpec::sine6();
  const auto grid = uniform_grid(41);
  const auto profiles =
      width_profile(dist, {Method::kl_cdf, Method::anytime_baseline}, 0.05,
                    1000, 99, grid);
  REQUIRE(profiles.size() == 2);

  // the baseline band has a y-independent radius wherever it is unclipped
  const auto& base = profiles[1];
  const double r = anytime_baseline_radius(1000, 0.05);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f_true = dist.cdf(grid[i]);
    const double upper = base.upper_gap[i] + f_true;
    const double lower = base.lower_gap[i] + f_true;
    if (upper < 1.0 && lower > 0.0) {
      CHECK(upper - lower == doctest::Approx(2.0 * r).epsilon(1e-9));
    }
  }

  // near F = 0 the kl band is tighter than the baseline radius
  const auto& klp = profiles[0];
  const std::size_t near_zero = 1;  // grid[1] = 0.025, F tiny there
  CHECK(dist.cdf(grid[near_zero]) < 0.05);
  CHECK(klp.upper_gap[near_zero] - klp.lower_gap[near_zero] <
        base.upper_gap[near_zero] - base.lower_gap[near_zero] + 1e-12);

  CHECK_THROWS_AS(width_profile(dist, {}, 0.05, 100, 1, grid),
                  std::invalid_argument);
}

TEST_CASE("running intersection stays valid on a small study") {
  SimConfig config;
  config.method = Method::kl_cdf;
  config.n_runs = 15;
  config.t_max = 25;
  config.intersect = true;
  config.seed = 5;
  const auto report = run_coverage(config);
  CHECK(report.miss_rate <= 0.2);

  config.intersect = false;
  const auto plain = run_coverage(config);
  // intersection can only add misses
  CHECK(report.miss_count >= plain.miss_count);
}
