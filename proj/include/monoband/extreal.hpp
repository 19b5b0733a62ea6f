#pragma once

#include <cmath>
#include <limits>

// Extended-real helpers. Wealth processes and their logarithms live on
// [0, +inf], and the conventions 0 * inf = 0 and log 0 + log inf = -inf make
// every expression below total.

namespace monoband {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Product with the 0 * inf = 0 convention.
inline double product_zero_inf(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  return x * y;
}

// log on [0, +inf] with log 0 = -inf.
inline double log_extended(double x) {
  if (x == 0.0) return -kInf;
  if (std::isinf(x)) return kInf;
  return std::log(x);
}

}  // namespace monoband
