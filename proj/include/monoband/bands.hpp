#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "monoband/sample_store.hpp"

namespace monoband {

// Band construction methods. The first five hold uniformly over the sample
// size (anytime-valid); dkw is a fixed-T baseline.
enum class Method {
  psi,               // wealth-statistic inverses on a finite candidate grid
  kl_cdf,            // binary-relative-entropy band, exact finite reduction
  kl_grid,           // binary-relative-entropy band on a finite candidate grid
  pinsker,           // closed-form relaxation of kl_cdf
  variance,          // variance-adaptive radius (requires T >= 10)
  dkw,               // fixed-T empirical-CDF baseline
  anytime_baseline,  // iterated-logarithm-style anytime baseline
};

std::string method_name(Method m);
Method parse_method(const std::string& name);  // throws input_error
bool method_is_anytime(Method m);

// Evaluation request: a strictly increasing grid of query points in [0,1]
// and a confidence level delta in (0,1].
struct BandQuery {
  std::vector<double> points;
  double delta = 0.05;
  Method method = Method::kl_cdf;
};

// Lower/upper envelopes over the query points. Both envelopes are
// non-decreasing and confined to [0,1]; `anytime` is false for bands that
// hold only at the sample size they were built from.
struct BandResult {
  std::vector<double> points;
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t sample_size = 0;
  Method method = Method::kl_cdf;
  bool anytime = true;
};

// Per-round values of a bounded monotone function evaluated on a finite
// candidate grid: row t holds f(X_t, y) for every grid point y. Rows must be
// non-decreasing along the grid and confined to [0,1].
struct SampleMatrix {
  std::vector<double> grid;    // strictly increasing, in [0,1]
  std::size_t rows = 0;
  std::vector<double> values;  // row-major rows x grid.size()

  double at(std::size_t row, std::size_t col) const {
    return values[row * grid.size() + col];
  }

  // Indicator values 1{x <= y} of the stored observations on a grid.
  static SampleMatrix indicators(const SampleStore& store,
                                 std::vector<double> grid);
};

// log(2 sqrt(T) / (gap * delta)); +inf when the gap is zero. This is the
// budget spent on a candidate at distance `gap` from the query point: the
// closer the candidate, the larger the budget.
double union_bound_budget(std::size_t t, double gap, double delta);

// Uniform band from wealth-statistic inverses evaluated at the candidate
// grid points. The grid must contain every query point; the query point
// itself always contributes the trivial bounds 0 and 1, so envelopes are
// never empty.
BandResult band_psi(const SampleMatrix& samples, const BandQuery& query);

// Same candidate structure, with the per-candidate interval coming from the
// inverses of the binary relative entropy at the column mean. Coarser than
// band_psi in general, equal for indicator data.
BandResult band_kl_grid(const SampleMatrix& samples, const BandQuery& query);

// CDF band with the exact finite reduction: since the empirical CDF is
// constant between consecutive order statistics, the optimisation over
// candidate points is achieved on at most T+1 values per query point.
BandResult band_kl_cdf(const SampleStore& store, const BandQuery& query);

// Closed-form relaxation of band_kl_cdf; wider everywhere.
BandResult band_pinsker(const SampleStore& store, const BandQuery& query);

// Variance-adaptive band: empirical mean plus/minus the variance radius,
// optimised over the same finite candidates. Requires T >= 10.
BandResult band_variance(const SampleStore& store, const BandQuery& query);
BandResult band_variance(const SampleMatrix& samples, const BandQuery& query);

// Fixed-T empirical CDF band with the sharp-constant radius
// sqrt(log(2/delta) / (2T)). Not anytime-valid.
BandResult band_dkw(const SampleStore& store, const BandQuery& query);

// Anytime baseline with radius 0.85 sqrt((loglog(eT) + 0.8 log(1612/delta))/T).
BandResult band_anytime_baseline(const SampleStore& store,
                                 const BandQuery& query);

double dkw_radius(std::size_t t, double delta);
double anytime_baseline_radius(std::size_t t, double delta);

// Dispatch on query.method. The grid-based methods (psi, kl_grid) run on the
// indicator columns at the union of the query points, the observations and a
// uniform candidate grid (default 1024 points).
BandResult compute_band(const SampleStore& store, const BandQuery& query);
BandResult compute_band(const SampleStore& store, const BandQuery& query,
                        std::size_t candidate_grid_size);

// Pointwise intersection of two bands over the same query points. Both
// inputs must be valid simultaneously for the result to be valid; running
// intersection over time is a strengthening that callers opt into.
BandResult intersect_bands(const BandResult& a, const BandResult& b);

}  // namespace monoband
