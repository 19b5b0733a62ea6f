#include "monoband/bands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monoband/divergences.hpp"
#include "monoband/errors.hpp"
#include "monoband/extreal.hpp"
#include "monoband/psi.hpp"

namespace monoband {

std::string method_name(Method m) {
  switch (m) {
    case Method::psi: return "psi";
    case Method::kl_cdf: return "kl-cdf";
    case Method::kl_grid: return "kl-grid";
    case Method::pinsker: return "pinsker";
    case Method::variance: return "variance";
    case Method::dkw: return "dkw";
    case Method::anytime_baseline: return "anytime-baseline";
  }
  throw std::logic_error("unreachable");
}

Method parse_method(const std::string& name) {
  for (const Method m :
       {Method::psi, Method::kl_cdf, Method::kl_grid, Method::pinsker,
        Method::variance, Method::dkw, Method::anytime_baseline}) {
    if (method_name(m) == name) return m;
  }
  throw input_error("unknown method '" + name + "'");
}

bool method_is_anytime(Method m) { return m != Method::dkw; }

double union_bound_budget(std::size_t t, double gap, double delta) {
  if (gap <= 0.0) return kInf;
  return std::log(2.0 * std::sqrt(static_cast<double>(t)) / (gap * delta));
}

namespace {

void validate_query(const BandQuery& q) {
  if (!(q.delta > 0.0 && q.delta <= 1.0)) {
    throw std::domain_error("delta must lie in (0,1]");
  }
  if (q.points.empty()) throw std::invalid_argument("empty query grid");
  double prev = -1.0;
  for (const double y : q.points) {
    if (!(y >= 0.0 && y <= 1.0)) {
      throw std::domain_error("query point outside [0,1]");
    }
    if (y <= prev) throw std::invalid_argument("query points must increase");
    prev = y;
  }
}

BandResult make_result(const BandQuery& q, std::size_t t) {
  BandResult r;
  r.points = q.points;
  r.lower.assign(q.points.size(), 0.0);
  r.upper.assign(q.points.size(), 1.0);
  r.sample_size = t;
  r.method = q.method;
  r.anytime = method_is_anytime(q.method);
  return r;
}

void clip_envelopes(BandResult& r) {
  for (auto& v : r.lower) v = std::clamp(v, 0.0, 1.0);
  for (auto& v : r.upper) v = std::clamp(v, 0.0, 1.0);
}

// Per-candidate interval endpoints for the order-statistic reduction of the
// store-based bands. `p` is the empirical CDF value t'/T on the piece and
// `budget` the union-bound budget at the piece boundary.
struct KlEndpoints {
  std::size_t t;
  double upper(double p, double budget) const {
    return kl_inverse_upper(p, KlBudget(budget / static_cast<double>(t)));
  }
  double lower(double p, double budget) const {
    return kl_inverse_lower(p, KlBudget(budget / static_cast<double>(t)));
  }
};

struct PinskerEndpoints {
  std::size_t t;
  double upper(double p, double budget) const {
    return p + pinsker_radius(KlBudget(budget), t);
  }
  double lower(double p, double budget) const {
    return p - pinsker_radius(KlBudget(budget), t);
  }
};

struct VarianceEndpoints {
  std::size_t t;
  double upper(double p, double budget) const {
    return p + variance_radius(p * (1.0 - p), t, KlBudget(budget));
  }
  double lower(double p, double budget) const {
    return p - variance_radius(p * (1.0 - p), t, KlBudget(budget));
  }
};

// Shared optimisation over the finite candidate set of a store-based band.
// For each query point y the upper envelope is the minimum over pieces
// [X_(t'), X_(t'+1)) at or above y of the candidate endpoint with gap
// measured to the right end of the piece; the lower envelope mirrors this
// below y. Candidates whose empirical mean is already past the running best
// can never improve it (every endpoint lies on the far side of its mean), so
// each scan stops there.
template <typename Endpoints>
BandResult band_from_store(const SampleStore& store, const BandQuery& query,
                           const Endpoints& ep) {
  validate_query(query);
  const std::size_t t = store.size();
  if (t == 0) throw std::invalid_argument("band requires at least one sample");

  const std::vector<double> xs = store.sorted();
  const auto order_stat = [&](std::size_t i) {
    if (i == 0) return 0.0;
    if (i == t + 1) return 1.0;
    return xs[i - 1];
  };
  const double td = static_cast<double>(t);

  BandResult result = make_result(query, t);
  for (std::size_t qi = 0; qi < query.points.size(); ++qi) {
    const double y = query.points[qi];
    const std::size_t c =
        std::upper_bound(xs.begin(), xs.end(), y) - xs.begin();

    double best_upper = 1.0;  // gap 0 at the query point itself
    for (std::size_t k = c; k <= t; ++k) {
      const double p = static_cast<double>(k) / td;
      if (p >= best_upper) break;
      const double gap = order_stat(k + 1) - y;
      if (gap <= 0.0) continue;  // trivial candidate, bound 1
      const double budget = union_bound_budget(t, gap, query.delta);
      best_upper = std::min(best_upper, ep.upper(p, budget));
    }

    double best_lower = 0.0;
    for (std::size_t k = c + 1; k-- > 0;) {
      const double p = static_cast<double>(k) / td;
      if (p <= best_lower) break;
      const double gap = y - order_stat(k);
      if (gap <= 0.0) continue;  // trivial candidate, bound 0
      const double budget = union_bound_budget(t, gap, query.delta);
      best_lower = std::max(best_lower, ep.lower(p, budget));
    }

    result.upper[qi] = best_upper;
    result.lower[qi] = best_lower;
  }
  clip_envelopes(result);
  return result;
}

struct Column {
  double mean = 0.0;
  double variance = 0.0;
  std::vector<WeightedValue> grouped;
};

std::vector<Column> summarize_columns(const SampleMatrix& m) {
  std::vector<Column> cols(m.grid.size());
  std::vector<double> buffer(m.rows);
  for (std::size_t j = 0; j < m.grid.size(); ++j) {
    for (std::size_t i = 0; i < m.rows; ++i) buffer[i] = m.at(i, j);
    const auto [mean, variance] = empirical_moments(buffer);
    cols[j].mean = mean;
    cols[j].variance = variance;
    cols[j].grouped = group_values(buffer);
  }
  return cols;
}

void validate_matrix(const SampleMatrix& m) {
  if (m.rows == 0) throw std::invalid_argument("sample matrix has no rows");
  if (m.grid.empty()) throw std::invalid_argument("sample matrix has no grid");
  if (m.values.size() != m.rows * m.grid.size()) {
    throw std::invalid_argument("sample matrix shape mismatch");
  }
  double prev = -1.0;
  for (const double g : m.grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::domain_error("candidate grid point outside [0,1]");
    }
    if (g <= prev) throw std::invalid_argument("candidate grid must increase");
    prev = g;
  }
  for (std::size_t i = 0; i < m.rows; ++i) {
    double prev_v = -1.0;
    for (std::size_t j = 0; j < m.grid.size(); ++j) {
      const double v = m.at(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("sample value outside [0,1]");
      }
      if (v < prev_v) {
        throw std::invalid_argument("sample rows must be non-decreasing");
      }
      prev_v = v;
    }
  }
}

// Candidate scan for grid-based bands. Upper/lower per-candidate endpoints
// are supplied by the callable (column index, budget) -> value.
template <typename UpperFn, typename LowerFn>
BandResult band_from_matrix(const SampleMatrix& m, const BandQuery& query,
                            const std::vector<Column>& cols, UpperFn upper_at,
                            LowerFn lower_at) {
  BandResult result = make_result(query, m.rows);
  for (std::size_t qi = 0; qi < query.points.size(); ++qi) {
    const double y = query.points[qi];
    const auto it = std::lower_bound(m.grid.begin(), m.grid.end(), y);
    if (it == m.grid.end() || *it != y) {
      throw std::invalid_argument(
          "candidate grid must contain every query point");
    }
    const std::size_t q = it - m.grid.begin();

    double best_upper = 1.0;
    for (std::size_t j = q; j < m.grid.size(); ++j) {
      if (cols[j].mean >= best_upper) break;
      const double budget =
          union_bound_budget(m.rows, m.grid[j] - y, query.delta);
      if (std::isinf(budget)) continue;  // trivial candidate, bound 1
      best_upper = std::min(best_upper, upper_at(j, budget));
    }

    double best_lower = 0.0;
    for (std::size_t j = q + 1; j-- > 0;) {
      if (cols[j].mean <= best_lower) break;
      const double budget =
          union_bound_budget(m.rows, y - m.grid[j], query.delta);
      if (std::isinf(budget)) continue;  // trivial candidate, bound 0
      best_lower = std::max(best_lower, lower_at(j, budget));
    }

    result.upper[qi] = best_upper;
    result.lower[qi] = best_lower;
  }
  clip_envelopes(result);
  return result;
}

}  // namespace

SampleMatrix SampleMatrix::indicators(const SampleStore& store,
                                      std::vector<double> grid) {
  SampleMatrix m;
  m.grid = std::move(grid);
  m.rows = store.size();
  m.values.resize(m.rows * m.grid.size());
  const std::vector<double> xs = store.sorted();
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.grid.size(); ++j) {
      m.values[i * m.grid.size() + j] = xs[i] <= m.grid[j] ? 1.0 : 0.0;
    }
  }
  return m;
}

BandResult band_psi(const SampleMatrix& samples, const BandQuery& query) {
  validate_query(query);
  validate_matrix(samples);
  const auto cols = summarize_columns(samples);
  return band_from_matrix(
      samples, query, cols,
      [&](std::size_t j, double budget) {
        return psi_weighted_inverse_upper(cols[j].grouped, cols[j].mean,
                                          KlBudget(budget));
      },
      [&](std::size_t j, double budget) {
        return psi_weighted_inverse_lower(cols[j].grouped, cols[j].mean,
                                          KlBudget(budget));
      });
}

BandResult band_kl_grid(const SampleMatrix& samples, const BandQuery& query) {
  validate_query(query);
  validate_matrix(samples);
  const auto cols = summarize_columns(samples);
  const double t = static_cast<double>(samples.rows);
  return band_from_matrix(
      samples, query, cols,
      [&](std::size_t j, double budget) {
        return kl_inverse_upper(cols[j].mean, KlBudget(budget / t));
      },
      [&](std::size_t j, double budget) {
        return kl_inverse_lower(cols[j].mean, KlBudget(budget / t));
      });
}

BandResult band_variance(const SampleMatrix& samples, const BandQuery& query) {
  validate_query(query);
  validate_matrix(samples);
  if (samples.rows < 10) {
    throw std::domain_error("variance band requires at least 10 samples");
  }
  const auto cols = summarize_columns(samples);
  return band_from_matrix(
      samples, query, cols,
      [&](std::size_t j, double budget) {
        return cols[j].mean +
               variance_radius(cols[j].variance, samples.rows, KlBudget(budget));
      },
      [&](std::size_t j, double budget) {
        return cols[j].mean -
               variance_radius(cols[j].variance, samples.rows, KlBudget(budget));
      });
}

BandResult band_kl_cdf(const SampleStore& store, const BandQuery& query) {
  return band_from_store(store, query, KlEndpoints{store.size()});
}

BandResult band_pinsker(const SampleStore& store, const BandQuery& query) {
  return band_from_store(store, query, PinskerEndpoints{store.size()});
}

BandResult band_variance(const SampleStore& store, const BandQuery& query) {
  if (store.size() < 10) {
    throw std::domain_error("variance band requires at least 10 samples");
  }
  return band_from_store(store, query, VarianceEndpoints{store.size()});
}

double dkw_radius(std::size_t t, double delta) {
  if (t < 1) throw std::domain_error("sample size must be >= 1");
  if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(t)));
}

double anytime_baseline_radius(std::size_t t, double delta) {
  if (t < 1) throw std::domain_error("sample size must be >= 1");
  if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
  const double td = static_cast<double>(t);
  const double e = 2.718281828459045235;
  return 0.85 * std::sqrt(
                    (std::log(std::log(e * td)) + 0.8 * std::log(1612.0 / delta)) /
                    td);
}

namespace {

template <typename RadiusFn>
BandResult band_fixed_radius(const SampleStore& store, const BandQuery& query,
                             RadiusFn radius_fn) {
  validate_query(query);
  const std::size_t t = store.size();
  if (t == 0) throw std::invalid_argument("band requires at least one sample");
  const double r = radius_fn(t, query.delta);
  BandResult result = make_result(query, t);
  for (std::size_t qi = 0; qi < query.points.size(); ++qi) {
    const double mean = store.empirical_cdf(query.points[qi]);
    result.lower[qi] = mean - r;
    result.upper[qi] = mean + r;
  }
  clip_envelopes(result);
  return result;
}

}  // namespace

BandResult band_dkw(const SampleStore& store, const BandQuery& query) {
  return band_fixed_radius(store, query, dkw_radius);
}

BandResult band_anytime_baseline(const SampleStore& store,
                                 const BandQuery& query) {
  return band_fixed_radius(store, query, anytime_baseline_radius);
}

BandResult compute_band(const SampleStore& store, const BandQuery& query) {
  return compute_band(store, query, 1024);
}

namespace {

// Grid-candidate band for indicator data without materialising the value
// matrix: a column at candidate y is binary with rank(y) ones, so its
// summary is synthesised from the rank alone. Produces exactly what
// band_psi / band_kl_grid would on SampleMatrix::indicators(store, grid).
BandResult band_indicator_grid(const SampleStore& store, const BandQuery& query,
                               std::vector<double> grid) {
  validate_query(query);
  const std::size_t t = store.size();
  if (t == 0) throw std::invalid_argument("band requires at least one sample");
  const double td = static_cast<double>(t);
  const std::vector<double> xs = store.sorted();

  std::vector<std::size_t> ranks(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    ranks[j] = std::upper_bound(xs.begin(), xs.end(), grid[j]) - xs.begin();
  }
  const bool use_psi = query.method == Method::psi;
  const auto endpoint = [&](std::size_t j, double budget, bool upper) {
    const double ones = static_cast<double>(ranks[j]);
    const double mean = ones / td;
    if (use_psi) {
      const WeightedValue column[2] = {{0.0, td - ones}, {1.0, ones}};
      const std::span<const WeightedValue> span(column, 2);
      return upper ? psi_weighted_inverse_upper(span, mean, KlBudget(budget))
                   : psi_weighted_inverse_lower(span, mean, KlBudget(budget));
    }
    return upper ? kl_inverse_upper(mean, KlBudget(budget / td))
                 : kl_inverse_lower(mean, KlBudget(budget / td));
  };

  BandResult result = make_result(query, t);
  for (std::size_t qi = 0; qi < query.points.size(); ++qi) {
    const double y = query.points[qi];
    const std::size_t q =
        std::lower_bound(grid.begin(), grid.end(), y) - grid.begin();

    double best_upper = 1.0;
    for (std::size_t j = q; j < grid.size(); ++j) {
      if (static_cast<double>(ranks[j]) / td >= best_upper) break;
      const double budget = union_bound_budget(t, grid[j] - y, query.delta);
      if (std::isinf(budget)) continue;
      best_upper = std::min(best_upper, endpoint(j, budget, true));
    }
    double best_lower = 0.0;
    for (std::size_t j = q + 1; j-- > 0;) {
      if (static_cast<double>(ranks[j]) / td <= best_lower) break;
      const double budget = union_bound_budget(t, y - grid[j], query.delta);
      if (std::isinf(budget)) continue;
      best_lower = std::max(best_lower, endpoint(j, budget, false));
    }
    result.upper[qi] = best_upper;
    result.lower[qi] = best_lower;
  }
  clip_envelopes(result);
  return result;
}

}  // namespace

BandResult compute_band(const SampleStore& store, const BandQuery& query,
                        std::size_t candidate_grid_size) {
  switch (query.method) {
    case Method::kl_cdf: return band_kl_cdf(store, query);
    case Method::pinsker: return band_pinsker(store, query);
    case Method::variance: return band_variance(store, query);
    case Method::dkw: return band_dkw(store, query);
    case Method::anytime_baseline: return band_anytime_baseline(store, query);
    case Method::psi:
    case Method::kl_grid: break;
  }
  // Grid-based methods: candidates are the query points, the observations and
  // a uniform fill-in. Finer grids tighten the band at linear extra cost.
  std::vector<double> grid = query.points;
  const auto xs = store.sorted();
  grid.insert(grid.end(), xs.begin(), xs.end());
  for (std::size_t i = 0; i < candidate_grid_size; ++i) {
    grid.push_back(static_cast<double>(i) /
                   std::max<std::size_t>(1, candidate_grid_size - 1));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return band_indicator_grid(store, query, std::move(grid));
}

BandResult intersect_bands(const BandResult& a, const BandResult& b) {
  if (a.points != b.points) {
    throw std::invalid_argument("bands must share their query points");
  }
  BandResult r = b;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    r.lower[i] = std::max(a.lower[i], b.lower[i]);
    r.upper[i] = std::min(a.upper[i], b.upper[i]);
  }
  r.anytime = a.anytime && b.anytime;
  r.sample_size = std::max(a.sample_size, b.sample_size);
  return r;
}

}  // namespace monoband
