#include "monoband/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "monoband/errors.hpp"
#include "monoband/rng.hpp"

namespace monoband {

std::uint64_t CounterRng::next_u64() {
  std::uint64_t x = base_ + 0x9e3779b97f4a7c15ull * ++counter_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ (0xd1b54a32d192ed03ull * (index + 1));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double sine6_cdf(double y) {
  const double s = std::sin(0.5 * kPi * std::sqrt(y));
  const double s2 = s * s;
  return s2 * s2 * s2;
}

// Baseline slope 3/4 with a mass-1/4 atom at 0.6 and a gentle oscillation.
double jump_mixture_cdf(double y) {
  const double base = (3.0 * y + (y >= 0.6 ? 1.0 : 0.0)) / 4.0;
  const double s = std::sin(2.0 * kPi * std::pow(y, 0.9));
  return base + s * s * s / 10.0;
}

}  // namespace

DistributionSpec::DistributionSpec(
    std::string name, std::function<double(double)> cdf,
    std::vector<std::pair<double, double>> atom_jumps)
    : name_(std::move(name)),
      cdf_(std::move(cdf)),
      atom_jumps_(std::move(atom_jumps)) {
  for (const auto& [loc, jump] : atom_jumps_) atoms_.push_back(loc);
  validate();
}

DistributionSpec DistributionSpec::uniform() {
  return {"uniform", [](double y) { return y; }, {}};
}

DistributionSpec DistributionSpec::sine6() {
  return {"sine6", sine6_cdf, {}};
}

DistributionSpec DistributionSpec::jump_mixture() {
  return {"jump-mixture", jump_mixture_cdf, {{0.6, 0.25}}};
}

DistributionSpec DistributionSpec::custom_table(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw input_error("cdf table needs at least two rows");
  double prev_y = -1.0, prev_f = 0.0;
  std::vector<std::pair<double, double>> atom_jumps;
  for (const auto& [y, f] : knots) {
    if (!(y >= 0.0 && y <= 1.0) || !(f >= 0.0 && f <= 1.0)) {
      throw input_error("cdf table entries must lie in [0,1]");
    }
    if (y < prev_y || f < prev_f) {
      throw input_error("cdf table must be non-decreasing");
    }
    if (y == prev_y && f > prev_f) atom_jumps.push_back({y, f - prev_f});
    prev_y = y;
    prev_f = f;
  }
  if (knots.front().first != 0.0 || knots.back().first != 1.0 ||
      knots.back().second != 1.0) {
    throw input_error("cdf table must span y in [0,1] and reach F(1) = 1");
  }
  auto eval = [table = knots](double y) {
    // Rightmost knot at or below y, interpolated linearly to the next one.
    std::size_t hi = 0;
    while (hi + 1 < table.size() && table[hi + 1].first <= y) ++hi;
    if (hi + 1 == table.size()) return table[hi].second;
    const auto [y0, f0] = table[hi];
    const auto [y1, f1] = table[hi + 1];
    if (y1 == y0) return f0;
    const double w = (y - y0) / (y1 - y0);
    return f0 + w * (f1 - f0);
  };
  return {"custom-cdf-table", std::move(eval), std::move(atom_jumps)};
}

DistributionSpec DistributionSpec::parse(const std::string& name) {
  if (name == "uniform") return uniform();
  if (name == "sine6") return sine6();
  if (name == "jump-mixture") return jump_mixture();
  throw input_error("unknown distribution '" + name + "'");
}

double DistributionSpec::cdf(double y) const { return cdf_(y); }

double DistributionSpec::cdf_left(double y) const {
  for (const auto& [loc, jump] : atom_jumps_) {
    if (loc == y) return cdf_(y) - jump;
  }
  return cdf_(y);
}

void DistributionSpec::validate() const {
  constexpr int kGridPoints = 10000;
  double prev = 0.0;
  for (int i = 0; i <= kGridPoints; ++i) {
    const double y = static_cast<double>(i) / kGridPoints;
    const double f = cdf_(y);
    if (!(f >= -1e-12 && f <= 1.0 + 1e-12)) {
      throw input_error("cdf of '" + name_ + "' leaves [0,1]");
    }
    if (f < prev - 1e-12) {
      throw input_error("cdf of '" + name_ + "' is not non-decreasing");
    }
    prev = std::max(prev, f);
  }
  if (std::fabs(cdf_(1.0) - 1.0) > 1e-9) {
    throw input_error("cdf of '" + name_ + "' does not reach 1 at y = 1");
  }
  if (cdf_(0.0) < -1e-12) {
    throw input_error("cdf of '" + name_ + "' is negative at y = 0");
  }
}

double DistributionSpec::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  // Atoms absorb a positive mass of u values; return their location exactly.
  for (const auto& [loc, jump] : atom_jumps_) {
    const double at = cdf_(loc);
    if (u <= at && u > at - jump) return loc;
  }
  if (cdf_(0.0) >= u) return 0.0;
  double lo = 0.0;  // cdf(lo) < u
  double hi = 1.0;  // cdf(hi) >= u
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t n,
                           std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> draws(n);
  const bool is_uniform = spec.name() == "uniform";
  for (auto& x : draws) {
    const double u = rng.next_unit();
    x = is_uniform ? u : spec.quantile(u);
  }
  return draws;
}

}  // namespace monoband
