#include "monoband/psi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "monoband/extreal.hpp"

namespace monoband {

namespace {

constexpr int kInverseIters = 40;  // 2^-40 < 1e-9 tolerance in mu

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1]");
  }
}

double weighted_mean(std::span<const WeightedValue> values) {
  double sum = 0.0, weight = 0.0;
  for (const auto& wv : values) {
    sum += wv.weight * wv.value;
    weight += wv.weight;
  }
  if (weight <= 0.0) throw std::invalid_argument("empty value sequence");
  return sum / weight;
}

}  // namespace

PsiCurve::PsiCurve(std::vector<double> v) : values(std::move(v)) {
  for (const double z : values) check_unit(z, "observed value");
}

double PsiCurve::mean() const {
  if (values.empty()) throw std::invalid_argument("empty value sequence");
  double sum = 0.0;
  for (const double z : values) sum += z;
  return sum / static_cast<double>(values.size());
}

std::vector<WeightedValue> group_values(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<WeightedValue> grouped;
  for (const double v : sorted) {
    if (!grouped.empty() && grouped.back().value == v) {
      grouped.back().weight += 1.0;
    } else {
      grouped.push_back({v, 1.0});
    }
  }
  return grouped;
}

double psi_weighted(std::span<const WeightedValue> values, double mu) {
  check_unit(mu, "mu");
  if (values.empty()) throw std::invalid_argument("empty value sequence");

  if (mu == 0.0) {
    // Admissible bets are [-1, +inf]; any positive value grows without bound.
    for (const auto& wv : values) {
      if (wv.weight > 0.0 && wv.value > 0.0) return kInf;
    }
    return 0.0;
  }
  if (mu == 1.0) {
    for (const auto& wv : values) {
      if (wv.weight > 0.0 && wv.value < 1.0) return kInf;
    }
    return 0.0;
  }

  const double bet_lo = -1.0 / (1.0 - mu);
  const double bet_hi = 1.0 / mu;
  if (values.size() <= 8) {  // indicator curves stay off the heap
    std::array<WeightedCoin, 8> coins;
    for (std::size_t i = 0; i < values.size(); ++i) {
      coins[i] = {values[i].value - mu, values[i].weight};
    }
    return sup_log_wealth({coins.data(), values.size()}, bet_lo, bet_hi);
  }
  std::vector<WeightedCoin> coins;
  coins.reserve(values.size());
  for (const auto& wv : values) coins.push_back({wv.value - mu, wv.weight});
  return sup_log_wealth(coins, bet_lo, bet_hi);
}

double psi(const PsiCurve& curve, double mu) {
  const auto grouped = group_values(curve.values);
  return psi_weighted(grouped, mu);
}

double psi_weighted_inverse_upper(std::span<const WeightedValue> values,
                                  double mean, KlBudget budget) {
  if (std::isinf(budget.value)) return 1.0;
  if (budget.value == 0.0) return mean;  // psi > 0 away from the mean
  double lo = mean;  // feasible: psi(mean) = 0
  double hi = 1.0;
  for (int i = 0; i < kInverseIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (psi_weighted(values, mid) <= budget.value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double psi_weighted_inverse_lower(std::span<const WeightedValue> values,
                                  double mean, KlBudget budget) {
  if (std::isinf(budget.value)) return 0.0;
  if (budget.value == 0.0) return mean;
  double lo = 0.0;
  double hi = mean;  // feasible
  if (psi_weighted(values, 0.0) <= budget.value) return 0.0;
  for (int i = 0; i < kInverseIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (psi_weighted(values, mid) <= budget.value) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double psi_inverse_upper(const PsiCurve& curve, KlBudget budget) {
  const auto grouped = group_values(curve.values);
  return psi_weighted_inverse_upper(grouped, weighted_mean(grouped), budget);
}

double psi_inverse_lower(const PsiCurve& curve, KlBudget budget) {
  const auto grouped = group_values(curve.values);
  return psi_weighted_inverse_lower(grouped, weighted_mean(grouped), budget);
}

}  // namespace monoband
