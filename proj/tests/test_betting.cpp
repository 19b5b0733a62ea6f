#include <cmath>
#include <doctest.h>
#include <stdexcept>
#include <vector>

#include "monoband/betting.hpp"
#include "monoband/extreal.hpp"
#include "monoband/rng.hpp"

using namespace monoband;

TEST_CASE("coin range") {
  CHECK_THROWS_AS(CoinRange(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(CoinRange(-0.5, 1.0), std::domain_error);
  const CoinRange r(0.5, 1.0);
  CHECK(r.bet_lower() == doctest::Approx(-1.0));
  CHECK(r.bet_upper() == doctest::Approx(2.0));
  CHECK(r.contains_coin(-0.5));
  CHECK(!r.contains_coin(-0.51));
  const CoinRange one_sided(0.0, 1.0);
  CHECK(one_sided.bet_upper() == kInf);
}

TEST_CASE("kt bet: first rounds and degenerate ranges") {
  const CoinRange unit(1.0, 1.0);
  CHECK(kt_bet({}, unit) == doctest::Approx(0.0).epsilon(1e-10));

  const std::vector<double> one_heads = {1.0};
  // Beta(1/2,1/2) moments: E[p^2]/E[p] = 0.75, so the bet is -1 + 2*0.75.
  CHECK(kt_bet(one_heads, unit) == doctest::Approx(0.5).epsilon(1e-9));

  CHECK(kt_bet(one_heads, CoinRange(0.0, 1.0)) == kInf);
  CHECK(kt_bet({}, CoinRange(1.0, 0.0)) == -kInf);

  const std::vector<double> invalid = {1.5};
  CHECK_THROWS_AS(kt_bet(invalid, unit), std::invalid_argument);
}

TEST_CASE("kt bet matches the beta posterior mean on binary coins") {
  // For coins in {-1,+1} with unit range the mixture ratio has the closed
  // form (heads + 1/2) / (rounds + 1).
  const CoinRange unit(1.0, 1.0);
  CounterRng rng(99);
  std::vector<double> history;
  int heads = 0;
  for (int t = 0; t < 40; ++t) {
    const double expected =
        -1.0 + 2.0 * (heads + 0.5) / (static_cast<double>(t) + 1.0);
    CHECK(kt_bet(history, unit) == doctest::Approx(expected).epsilon(1e-9));
    const double coin = rng.next_unit() < 0.5 ? -1.0 : 1.0;
    if (coin > 0) ++heads;
    history.push_back(coin);
  }
}

TEST_CASE("kt bet stays admissible on random histories") {
  CounterRng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = 0.1 + 0.9 * rng.next_unit();
    const double b = 0.1 + 0.9 * rng.next_unit();
    const CoinRange range(a, b);
    std::vector<double> history;
    for (int t = 0; t < 12; ++t) {
      history.push_back(-a + (a + b) * rng.next_unit());
    }
    const double bet = kt_bet(history, range);
    CHECK(bet >= range.bet_lower());
    CHECK(bet <= range.bet_upper());
  }
}

TEST_CASE("wealth update") {
  BettingState state{CoinRange(1.0, 1.0)};
  state = wealth_update(std::move(state), 0.0, 0.7);
  CHECK(state.wealth == 1.0);

  BettingState s2{CoinRange(0.5, 1.0)};
  s2 = wealth_update(std::move(s2), 2.0, 0.5);
  CHECK(s2.wealth == doctest::Approx(2.0));

  // 0 * inf = 0: an infinite bet on a zero coin changes nothing.
  BettingState s3{CoinRange(0.0, 1.0)};
  s3 = wealth_update(std::move(s3), kInf, 0.0);
  CHECK(s3.wealth == 1.0);
  s3.wealth = 0.0;
  s3 = wealth_update(std::move(s3), kInf, 0.0);
  CHECK(s3.wealth == 0.0);

  BettingState s4{CoinRange(1.0, 1.0)};
  CHECK_THROWS_AS(wealth_update(std::move(s4), 0.5, 2.0), std::domain_error);
  BettingState s5{CoinRange(1.0, 1.0)};
  CHECK_THROWS_AS(wealth_update(std::move(s5), 1.5, 0.5), std::domain_error);
}

TEST_CASE("wealth equals the product of its factors") {
  CounterRng rng(3);
  BettingState state{CoinRange(1.0, 1.0)};
  for (int t = 0; t < 60; ++t) {
    const double coin = 2.0 * rng.next_unit() - 1.0;
    const double bet = 1.8 * rng.next_unit() - 0.9;
    state = wealth_update(std::move(state), bet, coin);
  }
  CHECK(state.wealth ==
        doctest::Approx(state.recomputed_wealth()).epsilon(1e-12));
  CHECK(state.wealth >= 0.0);
}

TEST_CASE("regret") {
  // Constant optimal play has regret one.
  BettingState best{CoinRange(1.0, 1.0)};
  best = wealth_update(std::move(best), 1.0, 1.0);
  best = wealth_update(std::move(best), 1.0, 1.0);
  CHECK(regret(best) == doctest::Approx(1.0).epsilon(1e-9));

  // Not betting on two winning coins forfeits a factor 4.
  BettingState idle{CoinRange(1.0, 1.0)};
  idle = wealth_update(std::move(idle), 0.0, 1.0);
  idle = wealth_update(std::move(idle), 0.0, 1.0);
  CHECK(regret(idle) == doctest::Approx(4.0).epsilon(1e-9));

  BettingState empty{CoinRange(1.0, 1.0)};
  CHECK_THROWS_AS(regret(empty), std::invalid_argument);

  // an infinite bet on a favourable coin makes both wealths infinite
  BettingState unbounded{CoinRange(0.0, 1.0)};
  unbounded = wealth_update(std::move(unbounded), kInf, 0.5);
  CHECK(unbounded.wealth == kInf);
  CHECK(regret(unbounded) == 1.0);
}

TEST_CASE("kt regret bound on a few sequences") {
  CounterRng rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t rounds = 1 + static_cast<std::size_t>(60 * rng.next_unit());
    BettingState state{CoinRange(1.0, 1.0)};
    for (std::size_t t = 0; t < rounds; ++t) {
      const double bet = kt_bet(state.coins, state.range);
      const double coin = 2.0 * rng.next_unit() - 1.0;
      state = wealth_update(std::move(state), bet, coin);
    }
    CHECK(regret(state) <=
          2.0 * std::sqrt(static_cast<double>(rounds)) * (1.0 + 1e-9));
  }
}

TEST_CASE("sup_log_wealth endpoints and conventions") {
  // All-zero coins: the objective is identically zero even at infinite bets.
  const std::vector<WeightedCoin> zeros = {{0.0, 3.0}};
  CHECK(sup_log_wealth(zeros, -1.0, kInf) == 0.0);

  // One-sided positive coins with an unbounded end grow without limit.
  const std::vector<WeightedCoin> up = {{0.5, 2.0}, {0.0, 1.0}};
  CHECK(sup_log_wealth(up, -1.0, kInf) == kInf);

  // Symmetric +-1 coins: best constant is zero.
  const std::vector<WeightedCoin> pm = {{1.0, 1.0}, {-1.0, 1.0}};
  CHECK(sup_log_wealth(pm, -1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
}
