#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace monoband {

// Sorted multiset of observations in [0,1] with logarithmic insert and rank.
// Backed by a treap augmented with subtree counts; nodes live in an arena so
// snapshots are plain copies.
class SampleStore {
 public:
  SampleStore() = default;

  // O(log T) expected. Throws std::domain_error for x outside [0,1].
  void insert(double x);

  std::size_t size() const { return root_ < 0 ? 0 : nodes_[root_].count; }
  bool empty() const { return root_ < 0; }

  // Number of observations <= y. Non-decreasing in y; rank(1) == size().
  std::size_t rank(double y) const;

  // t-th smallest observation for t in [1, T], with the sentinels
  // order_statistic(0) == 0 and order_statistic(T+1) == 1.
  double order_statistic(std::size_t t) const;

  // rank(y) / T. Zero on an empty store.
  double empirical_cdf(double y) const;

  // Ascending copy of the observations, O(T).
  std::vector<double> sorted() const;

 private:
  struct Node {
    double key;
    std::uint64_t priority;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::size_t count = 1;
  };

  std::size_t count(std::int32_t n) const {
    return n < 0 ? 0 : nodes_[n].count;
  }
  void pull(std::int32_t n);
  std::pair<std::int32_t, std::int32_t> split(std::int32_t n, double key);
  std::int32_t merge(std::int32_t a, std::int32_t b);
  std::uint64_t next_priority();

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::uint64_t rng_state_ = 0x6d6f6e6f62616e64ull;
};

// Strictly increasing map from a raw observation domain into [0,1]: identity
// for data already in [0,1], affine for known finite bounds, logistic for
// unbounded data.
struct Reparameterisation {
  enum class Kind { identity, affine, logistic };

  Kind kind = Kind::identity;
  double lo = 0.0;      // affine lower bound / logistic center
  double hi = 1.0;      // affine upper bound / logistic scale

  static Reparameterisation identity();
  static Reparameterisation affine(double lo, double hi);
  static Reparameterisation logistic(double center, double scale);

  // "identity" | "affine:lo,hi" | "logistic:center,scale"
  static Reparameterisation parse(const std::string& text);

  // Throws std::domain_error when raw falls outside the declared domain.
  double apply(double raw) const;
};

// Mean and population variance (mean squared deviation) of values in [0,1];
// the variance of bounded values never exceeds 1/4.
std::pair<double, double> empirical_moments(std::span<const double> values);

}  // namespace monoband
