#include "monoband/betting.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "monoband/extreal.hpp"

namespace monoband {

CoinRange::CoinRange(double loss, double gain) : max_loss(loss), max_gain(gain) {
  if (!(loss >= 0.0) || !(gain >= 0.0) || loss + gain <= 0.0) {
    throw std::domain_error("coin range needs max_loss, max_gain >= 0, not both 0");
  }
}

double CoinRange::bet_lower() const {
  return max_gain == 0.0 ? -kInf : -1.0 / max_gain;
}

double CoinRange::bet_upper() const {
  return max_loss == 0.0 ? kInf : 1.0 / max_loss;
}

bool CoinRange::contains_coin(double c) const {
  return c >= -max_loss && c <= max_gain;
}

bool CoinRange::contains_bet(double f) const {
  return f >= bet_lower() && f <= bet_upper();
}

double BettingState::recomputed_wealth() const {
  double w = 1.0;
  for (std::size_t i = 0; i < coins.size(); ++i) {
    const double factor = 1.0 + product_zero_inf(bets[i], coins[i]);
    w = product_zero_inf(w, factor);
  }
  return w;
}

BettingState wealth_update(BettingState state, double bet, double coin) {
  if (!state.range.contains_coin(coin)) {
    throw std::domain_error("coin outside the declared range");
  }
  if (!state.range.contains_bet(bet)) {
    throw std::domain_error("bet fraction outside the admissible interval");
  }
  double factor = 1.0 + product_zero_inf(bet, coin);
  if (factor < 0.0) {
    // Only float noise at the boundary bet can land here (1 - a*(1/a)).
    if (factor < -1e-9) throw std::logic_error("negative wealth factor");
    factor = 0.0;
  }
  state.wealth = product_zero_inf(state.wealth, factor);
  state.bets.push_back(bet);
  state.coins.push_back(coin);
  return state;
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (symmetric halves listed).
constexpr std::array<double, 8> kGlNode = {
    0.0,
    0.2011940939974345223006283,
    0.3941513470775633698972074,
    0.5709721726085388475372267,
    0.7244177313601700474161861,
    0.8482065834104272162006483,
    0.9372733924007059043077589,
    0.9879925180204854284895657,
};
constexpr std::array<double, 8> kGlWeight = {
    0.2025782419255612728806202,
    0.1984314853271115764561183,
    0.1861610000155622110268006,
    0.1662692058169939335532009,
    0.1395706779261543144478048,
    0.1071592204671719350118695,
    0.0703660474881081247092674,
    0.0307532419961172683546284,
};

// Joint integrand for the KT mixture ratio after p = sin^2(theta/2):
// value[0] = wealth of the constant mixture at p, value[1] = p * value[0].
struct KtIntegrand {
  std::span<const double> history;
  double loss_inv;  // 1 / max_loss
  double gain_inv;  // 1 / max_gain

  std::array<double, 2> operator()(double theta) const {
    const double s = std::sin(0.5 * theta);
    const double p = s * s;
    const double bet = -gain_inv + (loss_inv + gain_inv) * p;
    double wealth = 1.0;
    for (const double c : history) wealth *= 1.0 + bet * c;
    if (wealth < 0.0) wealth = 0.0;  // boundary rounding
    return {wealth, p * wealth};
  }
};

std::array<double, 2> gl15(const KtIntegrand& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 2> acc = {0.0, 0.0};
  {
    const auto v = f(mid);
    acc[0] += kGlWeight[0] * v[0];
    acc[1] += kGlWeight[0] * v[1];
  }
  for (std::size_t i = 1; i < kGlNode.size(); ++i) {
    const auto a = f(mid - half * kGlNode[i]);
    const auto b = f(mid + half * kGlNode[i]);
    acc[0] += kGlWeight[i] * (a[0] + b[0]);
    acc[1] += kGlWeight[i] * (a[1] + b[1]);
  }
  acc[0] *= half;
  acc[1] *= half;
  return acc;
}

void integrate_adaptive(const KtIntegrand& f, double lo, double hi,
                        std::array<double, 2> whole, int depth,
                        std::array<double, 2>& out) {
  const double mid = 0.5 * (lo + hi);
  const auto left = gl15(f, lo, mid);
  const auto right = gl15(f, mid, hi);
  const std::array<double, 2> sum = {left[0] + right[0], left[1] + right[1]};
  const double err0 = std::fabs(sum[0] - whole[0]);
  const double err1 = std::fabs(sum[1] - whole[1]);
  const double tol0 = 1e-10 * std::fabs(sum[0]) + 1e-300;
  const double tol1 = 1e-10 * std::fabs(sum[1]) + 1e-300;
  if ((err0 <= tol0 && err1 <= tol1) || depth >= 40) {
    out[0] += sum[0];
    out[1] += sum[1];
    return;
  }
  integrate_adaptive(f, lo, mid, left, depth + 1, out);
  integrate_adaptive(f, mid, hi, right, depth + 1, out);
}

}  // namespace

double kt_bet(std::span<const double> history, const CoinRange& range) {
  for (const double c : history) {
    if (!range.contains_coin(c)) {
      throw std::invalid_argument("history contains an invalid coin");
    }
  }
  if (range.max_loss == 0.0) return kInf;
  if (range.max_gain == 0.0) return -kInf;

  const KtIntegrand f{history, 1.0 / range.max_loss, 1.0 / range.max_gain};
  constexpr double kPi = 3.14159265358979323846;
  std::array<double, 2> acc = {0.0, 0.0};
  // Seed the recursion with a few panels so sharply peaked mixtures are seen.
  constexpr int kPanels = 8;
  for (int i = 0; i < kPanels; ++i) {
    const double a = kPi * i / kPanels;
    const double b = kPi * (i + 1) / kPanels;
    integrate_adaptive(f, a, b, gl15(f, a, b), 0, acc);
  }
  const double p = acc[0] > 0.0 ? acc[1] / acc[0] : 0.5;
  const double bet =
      -1.0 / range.max_gain + (1.0 / range.max_loss + 1.0 / range.max_gain) * p;
  return std::clamp(bet, range.bet_lower(), range.bet_upper());
}

namespace {

bool all_zero(std::span<const WeightedCoin> coins) {
  for (const auto& wc : coins) {
    if (wc.weight > 0.0 && wc.coin != 0.0) return false;
  }
  return true;
}

double objective(std::span<const WeightedCoin> coins, double f) {
  double acc = 0.0;
  bool has_inf = false;
  for (const auto& wc : coins) {
    if (wc.weight <= 0.0) continue;
    const double factor = 1.0 + f * wc.coin;
    if (factor <= 0.0) return -kInf;  // log 0 dominates (log0 + loginf = -inf)
    if (std::isinf(factor)) {
      has_inf = true;
      continue;
    }
    acc += wc.weight * std::log(factor);
  }
  return has_inf ? kInf : acc;
}

// d/df of the objective strictly inside the admissible interval; at a point
// where some factor hits zero the one-sided limit is +-inf with the sign of
// the offending coin.
double derivative(std::span<const WeightedCoin> coins, double f) {
  double acc = 0.0;
  for (const auto& wc : coins) {
    if (wc.weight <= 0.0 || wc.coin == 0.0) continue;
    const double factor = 1.0 + f * wc.coin;
    if (factor <= 0.0) return wc.coin < 0.0 ? -kInf : kInf;
    acc += wc.weight * wc.coin / factor;
  }
  return acc;
}

}  // namespace

double sup_log_wealth(std::span<const WeightedCoin> coins, double bet_lo,
                      double bet_hi) {
  assert(bet_lo <= 0.0 && bet_hi >= 0.0);
  if (coins.empty() || all_zero(coins)) return 0.0;

  double cmin = kInf, cmax = -kInf;
  for (const auto& wc : coins) {
    if (wc.weight <= 0.0) continue;
    cmin = std::min(cmin, wc.coin);
    cmax = std::max(cmax, wc.coin);
  }
  // Unbounded ends are reachable only when all coins point the right way;
  // then the supremum is the limit at infinity.
  if (std::isinf(bet_hi) && cmin >= 0.0) return cmax > 0.0 ? kInf : 0.0;
  if (std::isinf(bet_lo) && cmax <= 0.0) return cmin < 0.0 ? kInf : 0.0;

  const double slope0 = derivative(coins, 0.0);
  if (slope0 == 0.0) return 0.0;

  double lo, hi;
  if (slope0 > 0.0) {
    lo = 0.0;
    hi = bet_hi;
    if (std::isinf(hi)) {
      // Some coin is negative here, so the objective eventually falls off a
      // log-zero wall; grow a finite bracket past the stationary point.
      hi = 1.0;
      while (derivative(coins, hi) > 0.0) hi *= 2.0;
    } else if (derivative(coins, hi) >= 0.0) {
      return std::max(0.0, objective(coins, hi));
    }
  } else {
    lo = bet_lo;
    hi = 0.0;
    if (std::isinf(lo)) {
      lo = -1.0;
      while (derivative(coins, lo) < 0.0) lo *= 2.0;
    } else if (derivative(coins, lo) <= 0.0) {
      return std::max(0.0, objective(coins, lo));
    }
  }

  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (derivative(coins, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double interior = objective(coins, 0.5 * (lo + hi));
  const double at_lo = objective(coins, bet_lo);
  const double at_hi = objective(coins, bet_hi);
  return std::max({0.0, interior, at_lo, at_hi});
}

double regret(const BettingState& state) {
  if (state.coins.empty()) {
    throw std::invalid_argument("regret needs at least one completed round");
  }
  std::vector<WeightedCoin> coins;
  coins.reserve(state.coins.size());
  for (const double c : state.coins) coins.push_back({c, 1.0});
  const double log_best =
      sup_log_wealth(coins, state.range.bet_lower(), state.range.bet_upper());
  const double log_realized = log_extended(state.wealth);
  if (std::isinf(log_best) && std::isinf(log_realized) &&
      log_best == log_realized) {
    return 1.0;  // both wealths null or both infinite
  }
  return std::exp(log_best - log_realized);
}

}  // namespace monoband
