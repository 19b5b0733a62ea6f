#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "monoband/divergences.hpp"
#include "monoband/extreal.hpp"
#include "monoband/rng.hpp"

using namespace monoband;

TEST_CASE("kl values and boundary conventions") {
  CHECK(kl(0.5, 0.5) == 0.0);
  CHECK(kl(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // direct arithmetic oracle: p log(p/q) + (1-p) log((1-p)/(1-q))
  const double oracle = 0.3 * std::log(0.3 / 0.7) + 0.7 * std::log(0.7 / 0.3);
  CHECK(kl(0.3, 0.7) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(kl(0.3, 0.7) == doctest::Approx(0.3389191441548814).epsilon(1e-12));

  CHECK(kl(0.0, 0.0) == 0.0);
  CHECK(kl(1.0, 1.0) == 0.0);
  CHECK(kl(0.2, 0.0) == kInf);
  CHECK(kl(0.2, 1.0) == kInf);
  CHECK(kl(0.0, 1.0) == kInf);
  CHECK(kl(1.0, 0.0) == kInf);
  CHECK(kl(1.0, 0.25) == doctest::Approx(std::log(4.0)));

  CHECK_THROWS_AS(kl(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(kl(0.5, 1.5), std::domain_error);
  CHECK_THROWS_AS(KlBudget(-1.0), std::domain_error);
}

TEST_CASE("kl inverses: closed forms and trivial budgets") {
  CHECK(kl_inverse_upper(0.3, KlBudget(0.0)) == 0.3);
  CHECK(kl_inverse_lower(0.3, KlBudget(0.0)) == 0.3);
  CHECK(kl_inverse_upper(0.7, KlBudget::infinite()) == 1.0);
  CHECK(kl_inverse_lower(0.7, KlBudget::infinite()) == 0.0);

  // kl(0,q) = log(1/(1-q)) and kl(1,q) = log(1/q) invert in closed form.
  CHECK(kl_inverse_upper(0.0, KlBudget(std::log(2.0))) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(kl_inverse_lower(1.0, KlBudget(std::log(2.0))) ==
        doctest::Approx(0.5).epsilon(1e-10));
  for (double c = 0.25; c <= 10.0; c += 0.5) {
    CHECK(kl_inverse_upper(0.0, KlBudget(c)) ==
          doctest::Approx(1.0 - std::exp(-c)).epsilon(1e-9));
    CHECK(kl_inverse_lower(1.0, KlBudget(c)) ==
          doctest::Approx(std::exp(-c)).epsilon(1e-9));
  }
}

TEST_CASE("kl inverse sandwich and monotonicity on random instances") {
  CounterRng rng(2024);
  double prev_upper = -1.0;
  for (int i = 0; i < 300; ++i) {
    const double p = rng.next_unit();
    const double c = 3.0 * rng.next_unit();
    const double up = kl_inverse_upper(p, KlBudget(c));
    const double low = kl_inverse_lower(p, KlBudget(c));
    CHECK(low <= p);
    CHECK(p <= up);
    CHECK(kl(p, up) <= c + 1e-8);
    CHECK(kl(p, low) <= c + 1e-8);
    // just past the returned endpoints the budget is exceeded
    if (up + 1e-6 <= 1.0) CHECK(kl(p, up + 1e-6) > c);
    if (low - 1e-6 >= 0.0) CHECK(kl(p, low - 1e-6) > c);

    // non-decreasing in c for fixed p
    const double up2 = kl_inverse_upper(p, KlBudget(c + 0.5));
    const double low2 = kl_inverse_lower(p, KlBudget(c + 0.5));
    CHECK(up2 >= up);
    CHECK(low2 <= low);
    (void)prev_upper;
  }
  // non-decreasing in p for fixed c
  for (int i = 0; i < 20; ++i) {
    const double p = i / 20.0;
    const double q = (i + 1) / 20.0;
    CHECK(kl_inverse_upper(q, KlBudget(0.4)) >=
          kl_inverse_upper(p, KlBudget(0.4)) - 1e-12);
    CHECK(kl_inverse_lower(q, KlBudget(0.4)) >=
          kl_inverse_lower(p, KlBudget(0.4)) - 1e-12);
  }
}

TEST_CASE("pinsker inequality on a grid") {
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double p = i / 100.0;
      const double q = j / 100.0;
      CHECK(kl(p, q) >= 2.0 * (p - q) * (p - q) - 1e-12);
    }
  }
}

TEST_CASE("pinsker radius") {
  CHECK(pinsker_radius(KlBudget(0.0), 100) == 0.0);
  CHECK(pinsker_radius(KlBudget(2.0), 1) == doctest::Approx(1.0));
  const double c = std::log(2.0 * std::sqrt(1000.0) / 0.05);
  CHECK(pinsker_radius(KlBudget(c), 1000) ==
        doctest::Approx(0.059761011929204334).epsilon(1e-12));
  // at a matched budget the pinsker radius dominates the kl deviation
  CounterRng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double p = rng.next_unit();
    const double c2 = 0.05 + 4.0 * rng.next_unit();
    const std::size_t t = 1 + static_cast<std::size_t>(500 * rng.next_unit());
    const double dev =
        kl_inverse_upper(p, KlBudget(c2 / static_cast<double>(t))) - p;
    CHECK(dev <= pinsker_radius(KlBudget(c2), t) + 1e-9);
  }
}

TEST_CASE("variance radius values and domain") {
  const double c30 = std::log(2.0 * std::sqrt(30.0));
  CHECK(variance_radius(0.0, 30, KlBudget(c30)) ==
        doctest::Approx(8.0 * c30 / 90.0).epsilon(1e-12));
  // direct arithmetic at a budget inside the validity clause
  const double c100 = 3.1;  // log(2 sqrt(100)) = 2.9957...
  CHECK(variance_radius(0.25, 100, KlBudget(c100)) ==
        doctest::Approx(8.0 * c100 / 300.0 + std::sqrt(4.0 * c100 * 0.25 / 100.0))
            .epsilon(1e-12));
  CHECK_THROWS_AS(variance_radius(0.1, 9, KlBudget(10.0)), std::domain_error);
  // budget below log(2 sqrt(T)) is outside the validity clause
  CHECK_THROWS_AS(variance_radius(0.1, 100, KlBudget(0.5)), std::domain_error);
  CHECK_THROWS_AS(variance_radius(0.7, 100, KlBudget(10.0)), std::domain_error);
}
