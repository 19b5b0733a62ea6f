#pragma once

#include <span>
#include <vector>

namespace monoband {

// Admissible outcome range of a continuous coin: values lie in
// [-max_loss, max_gain] with max_loss, max_gain >= 0 and not both zero.
// Bet fractions keeping the wealth non-negative lie in
// [-1/max_gain, 1/max_loss], with 1/0 = +inf.
struct CoinRange {
  double max_loss;
  double max_gain;

  CoinRange(double max_loss, double max_gain);

  double bet_lower() const;  // -1/max_gain (-inf when max_gain == 0)
  double bet_upper() const;  // +1/max_loss (+inf when max_loss == 0)
  bool contains_coin(double c) const;
  bool contains_bet(double f) const;
};

// State of a betting game: wealth starts at 1 and is multiplied by
// (1 + bet * coin) each round (with 0 * inf = 0). Histories are kept so the
// wealth can always be recomputed from scratch.
struct BettingState {
  CoinRange range;
  double wealth = 1.0;
  std::vector<double> coins;
  std::vector<double> bets;

  explicit BettingState(CoinRange r) : range(r) {}

  // Product of the per-round factors, applying the extended-real conventions.
  double recomputed_wealth() const;
};

// One betting round. Validates bet and coin against the range; the updated
// state is returned by value (inputs are never mutated in place).
BettingState wealth_update(BettingState state, double bet, double coin);

// Next bet fraction of the Krichevsky-Trofimov mixture forecaster given the
// coins seen so far: -1/max_gain + (1/max_loss + 1/max_gain) * p, where p is
// the ratio of two Beta(1/2,1/2)-weighted wealth integrals over the constant
// mixtures. Evaluated by adaptive Gauss-Legendre quadrature after the
// substitution p = sin^2(theta/2), which removes the endpoint singularity of
// the prior. Returns +inf when max_loss == 0 and -inf when max_gain == 0.
double kt_bet(std::span<const double> history, const CoinRange& range);

// Ratio of the best constant-fraction wealth over the realized wealth.
// Equals 1 when both are zero or both infinite.
double regret(const BettingState& state);

// A coin value with a (positive) multiplicity.
struct WeightedCoin {
  double coin;
  double weight;
};

// sup over bet fractions f in [bet_lo, bet_hi] of sum_i w_i log(1 + f c_i).
// The objective is concave in f; the supremum is located by bisection on the
// derivative sign over the open interior (200 iterations, tolerance 1e-12 on
// f) with explicit evaluation at both endpoints. Callers must guarantee that
// 1 + f c_i >= 0 over the whole interval and that an unbounded endpoint only
// occurs when every coin has the sign admissible for it.
double sup_log_wealth(std::span<const WeightedCoin> coins, double bet_lo,
                      double bet_hi);

}  // namespace monoband
