#include "monoband/divergences.hpp"

#include <cmath>
#include <stdexcept>

#include "monoband/extreal.hpp"

namespace monoband {

namespace {

constexpr int kBisectionIters = 44;  // interval width 2^-44 < 1e-10 tolerance

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1]");
  }
}

}  // namespace

KlBudget::KlBudget(double v) : value(v) {
  if (std::isnan(v) || v < 0.0) {
    throw std::domain_error("budget must be a non-negative real or +inf");
  }
}

KlBudget KlBudget::infinite() { return KlBudget(kInf); }

double kl(double p, double q) {
  check_unit(p, "p");
  check_unit(q, "q");
  if (p == 0.0) return q == 1.0 ? kInf : -std::log1p(-q);
  if (p == 1.0) return q == 0.0 ? kInf : -std::log(q);
  if (q == 0.0 || q == 1.0) return kInf;
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double kl_inverse_upper(double p, KlBudget budget) {
  check_unit(p, "p");
  if (std::isinf(budget.value)) return 1.0;
  if (budget.value == 0.0) return p;  // kl vanishes only at q = p
  double lo = p;  // feasible: kl(p,p) = 0
  double hi = 1.0;
  for (int i = 0; i < kBisectionIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kl(p, mid) <= budget.value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double kl_inverse_lower(double p, KlBudget budget) {
  check_unit(p, "p");
  if (std::isinf(budget.value)) return 0.0;
  if (budget.value == 0.0) return p;
  double lo = 0.0;
  double hi = p;  // feasible
  if (kl(p, 0.0) <= budget.value) return 0.0;  // only when p == 0
  for (int i = 0; i < kBisectionIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kl(p, mid) <= budget.value) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double pinsker_radius(KlBudget budget, std::size_t t) {
  if (t < 1) throw std::domain_error("sample size must be >= 1");
  return std::sqrt(budget.value / (2.0 * static_cast<double>(t)));
}

double variance_radius(double v_hat, std::size_t t, KlBudget budget) {
  if (t < 10) {
    throw std::domain_error("variance radius requires at least 10 samples");
  }
  const double td = static_cast<double>(t);
  if (budget.value < std::log(2.0 * std::sqrt(td))) {
    throw std::domain_error("variance radius requires budget >= log(2 sqrt(T))");
  }
  if (!(v_hat >= -1e-12 && v_hat <= 0.25 + 1e-12)) {
    throw std::domain_error("empirical variance must lie in [0, 0.25]");
  }
  const double v = std::min(std::max(v_hat, 0.0), 0.25);
  return 8.0 * budget.value / (3.0 * td) +
         std::sqrt(4.0 * budget.value * v / td);
}

}  // namespace monoband
