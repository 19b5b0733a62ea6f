#pragma once

#include <cstddef>

namespace monoband {

// Confidence budget in nats handed to the inverse operations: the feasible set
// {q : divergence <= budget} shrinks as the budget does. Non-negative, may be
// +inf.
struct KlBudget {
  double value;

  explicit KlBudget(double v);
  static KlBudget infinite();
};

// Binary relative entropy kl(p, q) between Bernoulli(p) and Bernoulli(q), in
// nats. Boundary conventions: kl(0,q) = log(1/(1-q)), kl(1,q) = log(1/q),
// kl(p,0) = +inf for p > 0, kl(p,1) = +inf for p < 1, kl(0,0) = kl(1,1) = 0.
// Throws std::domain_error if p or q lies outside [0,1].
double kl(double p, double q);

// sup / inf of {q in [0,1] : kl(p,q) <= budget}. kl(p, .) is convex with
// minimum 0 at q = p, so each inverse is found by bisection on one side of p;
// absolute tolerance 1e-10 in q. The returned point always satisfies
// kl(p, result) <= budget.
double kl_inverse_upper(double p, KlBudget budget);
double kl_inverse_lower(double p, KlBudget budget);

// Radius sqrt(budget / (2T)): |p - q| <= radius whenever kl(p,q) <= budget.
double pinsker_radius(KlBudget budget, std::size_t t);

// Variance-adaptive radius 8C/(3T) + sqrt(4C*v/T) for empirical variance v.
// Valid only for T >= 10 and budget >= log(2 sqrt(T)); violations throw
// std::domain_error rather than returning a silently wrong radius.
double variance_radius(double v_hat, std::size_t t, KlBudget budget);

}  // namespace monoband
