#pragma once

#include <span>
#include <vector>

#include "monoband/betting.hpp"
#include "monoband/divergences.hpp"

namespace monoband {

// Values observed at a fixed evaluation point, one per round, all in [0,1].
struct PsiCurve {
  std::vector<double> values;

  explicit PsiCurve(std::vector<double> v);
  double mean() const;
};

// A distinct observed value with its multiplicity. Grouping equal values
// keeps evaluation cheap for indicator data, where only two values occur.
struct WeightedValue {
  double value;   // in [0,1]
  double weight;  // > 0
};

// Strategy-free wealth statistic: the log-wealth of the best constant bet on
// the coins (z_t - mu), with bet fractions restricted to
// [-1/(1-mu), 1/mu]. Non-negative, zero exactly at the empirical mean, and
// quasi-convex in mu. At mu = 0 or mu = 1 the admissible interval is
// half-unbounded and the supremum is taken as a limit: +inf unless all values
// sit on that boundary.
double psi(const PsiCurve& curve, double mu);

// Upper and lower inverses in mu at a given budget:
//   upper = sup{mu : psi <= C},  lower = inf{mu : psi <= C}.
// Located by bisection on [mean, 1] (resp. [0, mean]) using the one-sided
// monotonicity of psi around its minimum; absolute tolerance 1e-9. The
// returned point always satisfies psi(curve, result) <= C.
double psi_inverse_upper(const PsiCurve& curve, KlBudget budget);
double psi_inverse_lower(const PsiCurve& curve, KlBudget budget);

// Grouped-value variants used by the band construction and the simulator.
// total_weight is the number of rounds T; the budget convention matches the
// ungrouped functions.
double psi_weighted(std::span<const WeightedValue> values, double mu);
double psi_weighted_inverse_upper(std::span<const WeightedValue> values,
                                  double mean, KlBudget budget);
double psi_weighted_inverse_lower(std::span<const WeightedValue> values,
                                  double mean, KlBudget budget);

// Sorted (value, multiplicity) compression of a raw curve.
std::vector<WeightedValue> group_values(std::span<const double> values);

}  // namespace monoband
