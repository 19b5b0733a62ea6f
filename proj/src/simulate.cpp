#include "monoband/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "monoband/divergences.hpp"
#include "monoband/psi.hpp"
#include "monoband/rng.hpp"

namespace monoband {

std::vector<double> uniform_grid(std::size_t size) {
  if (size < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> grid(size);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(size - 1);
  }
  return grid;
}

namespace {

// State of one simulated stream: observations so far, kept sorted, plus the
// union with the query grid (the points where misses are checked and, for the
// grid-candidate methods, also the band's candidate set).
struct Stream {
  std::vector<double> samples;       // sorted
  std::vector<double> check_points;  // sorted union of grid and samples

  explicit Stream(const std::vector<double>& grid) : check_points(grid) {}

  void add(double x) {
    samples.insert(std::upper_bound(samples.begin(), samples.end(), x), x);
    check_points.insert(
        std::upper_bound(check_points.begin(), check_points.end(), x), x);
  }

  std::size_t rank(double y) const {
    return std::upper_bound(samples.begin(), samples.end(), y) -
           samples.begin();
  }

  double order_statistic(std::size_t k) const {
    if (k == 0) return 0.0;
    if (k == samples.size() + 1) return 1.0;
    return samples[k - 1];
  }
};

// Candidate endpoint comparisons in direct form: the true value F(y) escapes
// the envelope iff some candidate's interval endpoint falls on the wrong side
// of it, which for each method reduces to comparing a divergence (or an
// explicit radius) against the candidate's budget. Candidates whose empirical
// mean already lies beyond F(y) can never exclude it, which keeps the scans
// short. This checks the same mathematical object the band constructors
// optimise, without running any bisection inversions.
class MissChecker {
 public:
  MissChecker(Method method, double delta) : method_(method), delta_(delta) {}

  bool cdf_escapes(std::span<const double> samples,
                   std::span<const double> check_points, double y,
                   double f_true) const {
    switch (method_) {
      case Method::kl_cdf:
      case Method::pinsker:
      case Method::variance:
        return piece_scan(samples, y, f_true);
      case Method::psi:
      case Method::kl_grid:
        return point_scan(samples, check_points, y, f_true);
      case Method::dkw:
      case Method::anytime_baseline: {
        const double t = static_cast<double>(samples.size());
        const double mean = static_cast<double>(rank_of(samples, y)) / t;
        const double r =
            method_ == Method::dkw
                ? dkw_radius(samples.size(), delta_)
                : anytime_baseline_radius(samples.size(), delta_);
        return std::fabs(mean - f_true) > r;
      }
    }
    return false;
  }

 private:
  // Does the candidate with `ones` indicator hits out of t (mean p) exclude
  // the value q?
  bool excludes(double p, double ones, double q, double budget,
                double t) const {
    switch (method_) {
      case Method::kl_cdf:
      case Method::kl_grid:
        return t * kl(p, q) > budget;
      case Method::psi: {
        const WeightedValue column[2] = {{0.0, t - ones}, {1.0, ones}};
        return psi_weighted({column, 2}, q) > budget;
      }
      case Method::pinsker: {
        const double d = std::fabs(q - p);
        return 2.0 * t * d * d > budget;
      }
      case Method::variance: {
        const double radius = 8.0 * budget / (3.0 * t) +
                              std::sqrt(4.0 * budget * p * (1.0 - p) / t);
        return std::fabs(q - p) > radius;
      }
      default:
        return false;
    }
  }

  static std::size_t rank_of(std::span<const double> samples, double y) {
    return std::upper_bound(samples.begin(), samples.end(), y) -
           samples.begin();
  }

  static double order_stat(std::span<const double> samples, std::size_t k) {
    if (k == 0) return 0.0;
    if (k == samples.size() + 1) return 1.0;
    return samples[k - 1];
  }

  // Candidates are the constant pieces of the empirical CDF, with the gap
  // measured to the far end of the piece.
  bool piece_scan(std::span<const double> samples, double y,
                  double f_true) const {
    const std::size_t t = samples.size();
    const double td = static_cast<double>(t);
    const std::size_t c = rank_of(samples, y);
    for (std::size_t k = c; k <= t; ++k) {
      const double p = static_cast<double>(k) / td;
      if (p >= f_true) break;
      const double gap = order_stat(samples, k + 1) - y;
      if (gap <= 0.0) continue;
      if (excludes(p, static_cast<double>(k), f_true,
                   union_bound_budget(t, gap, delta_), td)) {
        return true;
      }
    }
    for (std::size_t k = c + 1; k-- > 0;) {
      const double p = static_cast<double>(k) / td;
      if (p <= f_true) break;
      const double gap = y - order_stat(samples, k);
      if (gap <= 0.0) continue;
      if (excludes(p, static_cast<double>(k), f_true,
                   union_bound_budget(t, gap, delta_), td)) {
        return true;
      }
    }
    return false;
  }

  // Candidates are the check points themselves, with exact gaps.
  bool point_scan(std::span<const double> samples,
                  std::span<const double> cp, double y, double f_true) const {
    const std::size_t t = samples.size();
    const double td = static_cast<double>(t);
    const std::size_t start =
        std::lower_bound(cp.begin(), cp.end(), y) - cp.begin();
    for (std::size_t j = start; j < cp.size(); ++j) {
      const double ones = static_cast<double>(rank_of(samples, cp[j]));
      const double p = ones / td;
      if (p >= f_true) break;
      const double gap = cp[j] - y;
      if (gap <= 0.0) continue;
      if (excludes(p, ones, f_true, union_bound_budget(t, gap, delta_), td)) {
        return true;
      }
    }
    for (std::size_t j = start; j-- > 0;) {
      const double ones = static_cast<double>(rank_of(samples, cp[j]));
      const double p = ones / td;
      if (p <= f_true) break;
      const double gap = y - cp[j];
      if (gap <= 0.0) continue;
      if (excludes(p, ones, f_true, union_bound_budget(t, gap, delta_), td)) {
        return true;
      }
    }
    return false;
  }

  Method method_;
  double delta_;
};

void validate_config(const SimConfig& config) {
  if (config.n_runs == 0) {
    throw std::invalid_argument("coverage simulation needs at least one run");
  }
  if (config.t_max == 0) {
    throw std::invalid_argument("t_max must be at least 1");
  }
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    throw std::domain_error("delta must lie in (0,1]");
  }
  if (config.grid_size < 2) {
    throw std::invalid_argument("grid size must be at least 2");
  }
  if (config.method == Method::variance && config.t_max < 10) {
    throw std::domain_error("variance band requires t_max >= 10");
  }
}

}  // namespace

CoverageReport run_coverage(const SimConfig& config) {
  validate_config(config);
  const std::vector<double> grid = uniform_grid(config.grid_size);
  // The variance radius only exists for T >= 10; earlier times are outside
  // the method's validity claim and are not checked.
  const std::size_t t_start = config.method == Method::variance ? 10 : 1;

  std::vector<std::size_t> checkpoints;
  for (const std::size_t t :
       {config.t_max / 4, config.t_max / 2, config.t_max}) {
    const std::size_t clamped = std::max(t, t_start);
    if (clamped <= config.t_max &&
        (checkpoints.empty() || checkpoints.back() != clamped)) {
      checkpoints.push_back(clamped);
    }
  }

  const MissChecker checker(config.method, config.delta);
  std::vector<char> missed(config.n_runs, 0);
  std::vector<std::vector<double>> widths(
      checkpoints.size(),
      std::vector<double>(config.n_runs * grid.size(), 0.0));

  const auto run_one = [&](std::size_t run) {
    const auto draws =
        sample(config.dist, config.t_max, derive_seed(config.seed, run));
    Stream stream(grid);
    BandQuery query{grid, config.delta, config.method};

    std::vector<double> running_lower(grid.size(), 0.0);
    std::vector<double> running_upper(grid.size(), 1.0);
    bool hit = false;
    for (std::size_t t = 1; t <= config.t_max; ++t) {
      stream.add(draws[t - 1]);

      if (t >= t_start) {
        if (config.intersect) {
          // Running intersection: valid because every per-time band is valid
          // on the same event; checked on the query grid only.
          SampleStore store;
          for (const double x : stream.samples) store.insert(x);
          const BandResult band = compute_band(store, query);
          for (std::size_t i = 0; i < grid.size(); ++i) {
            running_lower[i] = std::max(running_lower[i], band.lower[i]);
            running_upper[i] = std::min(running_upper[i], band.upper[i]);
          }
          if (!hit) {
            for (std::size_t i = 0; i < grid.size(); ++i) {
              const double f_true = config.dist.cdf(grid[i]);
              if (f_true < running_lower[i] || f_true > running_upper[i]) {
                hit = true;
                break;
              }
            }
          }
        } else if (!hit && (config.method != Method::dkw || t == config.t_max)) {
          for (const double y : stream.check_points) {
            if (checker.cdf_escapes(stream.samples, stream.check_points, y,
                                    config.dist.cdf(y))) {
              hit = true;
              break;
            }
          }
        }
      }

      const auto cp = std::find(checkpoints.begin(), checkpoints.end(), t);
      if (cp != checkpoints.end()) {
        SampleStore store;
        for (const double x : stream.samples) store.insert(x);
        // Candidate fill-in 0: the grid methods then use exactly the
        // candidate set whose coverage is being measured (grid + samples).
        const BandResult band = compute_band(store, query, 0);
        const std::size_t ci = cp - checkpoints.begin();
        for (std::size_t i = 0; i < grid.size(); ++i) {
          widths[ci][run * grid.size() + i] = band.upper[i] - band.lower[i];
        }
      }
    }
    missed[run] = hit ? 1 : 0;
  };

  unsigned n_threads =
      config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, config.n_runs));

  if (n_threads == 1) {
    for (std::size_t run = 0; run < config.n_runs; ++run) run_one(run);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
      workers.emplace_back([&] {
        try {
          for (std::size_t run = next.fetch_add(1); run < config.n_runs;
               run = next.fetch_add(1)) {
            run_one(run);
          }
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  CoverageReport report;
  report.method = method_name(config.method);
  report.distribution = config.dist.name();
  report.delta = config.delta;
  report.t_max = config.t_max;
  report.n_runs = config.n_runs;
  report.anytime = method_is_anytime(config.method);
  for (const char m : missed) report.miss_count += m;
  report.miss_rate =
      static_cast<double>(report.miss_count) / static_cast<double>(config.n_runs);
  report.checkpoints = checkpoints;
  for (auto& values : widths) {
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double q) {
      const std::size_t idx = static_cast<std::size_t>(
          q * static_cast<double>(values.size() - 1) + 0.5);
      return values[std::min(idx, values.size() - 1)];
    };
    report.width_quantiles.push_back({quantile(0.5), quantile(0.9)});
  }
  return report;
}

bool band_excludes(Method method, double delta,
                   std::span<const double> sorted_samples,
                   std::span<const double> check_points, double y,
                   double f_true) {
  if (sorted_samples.empty()) {
    throw std::invalid_argument("band_excludes needs at least one sample");
  }
  return MissChecker(method, delta)
      .cdf_escapes(sorted_samples, check_points, y, f_true);
}

std::vector<WidthProfile> width_profile(const DistributionSpec& dist,
                                        const std::vector<Method>& methods,
                                        double delta, std::size_t t,
                                        std::uint64_t seed,
                                        const std::vector<double>& grid) {
  if (methods.empty()) throw std::invalid_argument("no methods requested");
  SampleStore store;
  for (const double x : sample(dist, t, seed)) store.insert(x);

  std::vector<WidthProfile> profiles;
  profiles.reserve(methods.size());
  for (const Method method : methods) {
    const BandResult band = compute_band(store, BandQuery{grid, delta, method});
    WidthProfile profile;
    profile.method = method;
    profile.sample_size = t;
    profile.points = grid;
    profile.upper_gap.resize(grid.size());
    profile.lower_gap.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double f_true = dist.cdf(grid[i]);
      profile.upper_gap[i] = band.upper[i] - f_true;
      profile.lower_gap[i] = band.lower[i] - f_true;
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

}  // namespace monoband
