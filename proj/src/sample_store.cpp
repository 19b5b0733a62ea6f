#include "monoband/sample_store.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "monoband/errors.hpp"

namespace monoband {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t SampleStore::next_priority() {
  rng_state_ = splitmix64(rng_state_);
  return rng_state_;
}

void SampleStore::pull(std::int32_t n) {
  nodes_[n].count = 1 + count(nodes_[n].left) + count(nodes_[n].right);
}

// Split into keys <= key and keys > key.
std::pair<std::int32_t, std::int32_t> SampleStore::split(std::int32_t n,
                                                         double key) {
  if (n < 0) return {-1, -1};
  if (nodes_[n].key <= key) {
    auto [a, b] = split(nodes_[n].right, key);
    nodes_[n].right = a;
    pull(n);
    return {n, b};
  }
  auto [a, b] = split(nodes_[n].left, key);
  nodes_[n].left = b;
  pull(n);
  return {a, n};
}

std::int32_t SampleStore::merge(std::int32_t a, std::int32_t b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[a].priority >= nodes_[b].priority) {
    nodes_[a].right = merge(nodes_[a].right, b);
    pull(a);
    return a;
  }
  nodes_[b].left = merge(a, nodes_[b].left);
  pull(b);
  return b;
}

void SampleStore::insert(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("observation outside [0,1]; reparameterise first");
  }
  nodes_.push_back(Node{x, next_priority()});
  const auto fresh = static_cast<std::int32_t>(nodes_.size() - 1);
  auto [a, b] = split(root_, x);
  root_ = merge(merge(a, fresh), b);
}

std::size_t SampleStore::rank(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("rank query outside [0,1]");
  }
  std::size_t below = 0;
  std::int32_t n = root_;
  while (n >= 0) {
    if (nodes_[n].key <= y) {
      below += count(nodes_[n].left) + 1;
      n = nodes_[n].right;
    } else {
      n = nodes_[n].left;
    }
  }
  return below;
}

double SampleStore::order_statistic(std::size_t t) const {
  const std::size_t n = size();
  if (t == 0) return 0.0;
  if (t == n + 1) return 1.0;
  if (t > n) throw std::out_of_range("order statistic index out of range");
  std::int32_t cur = root_;
  std::size_t k = t;
  while (cur >= 0) {
    const std::size_t left = count(nodes_[cur].left);
    if (k == left + 1) return nodes_[cur].key;
    if (k <= left) {
      cur = nodes_[cur].left;
    } else {
      k -= left + 1;
      cur = nodes_[cur].right;
    }
  }
  throw std::logic_error("corrupt tree");
}

double SampleStore::empirical_cdf(double y) const {
  if (empty()) return 0.0;
  return static_cast<double>(rank(y)) / static_cast<double>(size());
}

std::vector<double> SampleStore::sorted() const {
  std::vector<double> out;
  out.reserve(size());
  std::vector<std::int32_t> stack;
  std::int32_t n = root_;
  while (n >= 0 || !stack.empty()) {
    while (n >= 0) {
      stack.push_back(n);
      n = nodes_[n].left;
    }
    n = stack.back();
    stack.pop_back();
    out.push_back(nodes_[n].key);
    n = nodes_[n].right;
  }
  return out;
}

Reparameterisation Reparameterisation::identity() { return {}; }

Reparameterisation Reparameterisation::affine(double lo, double hi) {
  if (!(hi > lo)) throw std::domain_error("affine map needs hi > lo");
  return {Kind::affine, lo, hi};
}

Reparameterisation Reparameterisation::logistic(double center, double scale) {
  if (!(scale > 0.0)) throw std::domain_error("logistic map needs scale > 0");
  return {Kind::logistic, center, scale};
}

Reparameterisation Reparameterisation::parse(const std::string& text) {
  if (text == "identity" || text.empty()) return identity();
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  double p0 = 0.0, p1 = 1.0;
  if (colon != std::string::npos) {
    std::istringstream args(text.substr(colon + 1));
    char comma = 0;
    if (!(args >> p0 >> comma >> p1) || comma != ',') {
      throw input_error("cannot parse reparameterisation '" + text + "'");
    }
  }
  if (name == "affine") return affine(p0, p1);
  if (name == "logistic") return logistic(p0, p1);
  throw input_error("unknown reparameterisation '" + text + "'");
}

double Reparameterisation::apply(double raw) const {
  switch (kind) {
    case Kind::identity:
      if (!(raw >= 0.0 && raw <= 1.0)) {
        throw std::domain_error("identity map: value outside [0,1]");
      }
      return raw;
    case Kind::affine:
      if (!(raw >= lo && raw <= hi)) {
        throw std::domain_error("affine map: value outside declared bounds");
      }
      return (raw - lo) / (hi - lo);
    case Kind::logistic:
      return 1.0 / (1.0 + std::exp(-(raw - lo) / hi));
  }
  throw std::logic_error("unreachable");
}

std::pair<double, double> empirical_moments(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empty value sequence");
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, var};
}

}  // namespace monoband
