#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "monoband/bands.hpp"
#include "monoband/distributions.hpp"

namespace monoband {

// Coverage experiment: n_runs independent data streams, each fed to the band
// one observation at a time up to t_max. A run is a miss if the true CDF
// escapes the band at any admissible time and any checked point (the query
// grid plus the observations, where the step-shaped envelopes move).
struct SimConfig {
  DistributionSpec dist = DistributionSpec::uniform();
  Method method = Method::kl_cdf;
  double delta = 0.05;
  std::size_t t_max = 200;
  std::size_t n_runs = 1000;
  std::uint64_t seed = 0;
  std::size_t grid_size = 21;  // uniform query grid on [0,1]
  unsigned threads = 0;        // 0 = available parallelism
  bool intersect = false;      // opt-in running intersection on the grid
};

struct CoverageReport {
  std::string method;
  std::string distribution;
  double delta = 0.0;
  std::size_t t_max = 0;
  std::size_t n_runs = 0;
  bool anytime = true;  // false when the method was only checked at t_max
  std::size_t miss_count = 0;
  double miss_rate = 0.0;
  // Band widths collected over (run, grid point) at a few sample sizes.
  std::vector<std::size_t> checkpoints;
  std::vector<std::array<double, 2>> width_quantiles;  // {p50, p90}
};

// Deterministic in (seed, config); the run set is identical for any thread
// count. Throws std::invalid_argument for n_runs == 0 and std::domain_error
// for configurations outside a method's validity domain.
CoverageReport run_coverage(const SimConfig& config);

// True when f_true escapes the method's band at y. Evaluated in direct form
// (divergence against budget per candidate) without constructing the band;
// agrees with the band builders up to their bisection tolerance. For the
// grid-candidate methods (psi, kl-grid) the candidates are the given check
// points; the other methods use the empirical-CDF pieces.
bool band_excludes(Method method, double delta,
                   std::span<const double> sorted_samples,
                   std::span<const double> check_points, double y,
                   double f_true);

// Signed distance of the band envelopes from the true CDF on a grid, for one
// sampled dataset per call.
struct WidthProfile {
  Method method = Method::kl_cdf;
  std::size_t sample_size = 0;
  std::vector<double> points;
  std::vector<double> upper_gap;  // upper - F
  std::vector<double> lower_gap;  // lower - F
};

std::vector<WidthProfile> width_profile(const DistributionSpec& dist,
                                        const std::vector<Method>& methods,
                                        double delta, std::size_t t,
                                        std::uint64_t seed,
                                        const std::vector<double>& grid);

std::vector<double> uniform_grid(std::size_t size);  // size >= 2

}  // namespace monoband
