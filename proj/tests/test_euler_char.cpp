#include "doctest.h"
#include "torelli_euler/arith.hpp"
#include "torelli_euler/errors.hpp"
#include "torelli_euler/euler_char.hpp"
#include "torelli_euler/zeta.hpp"

using namespace torelli_euler;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

const BernoulliTable& table() {
  static const BernoulliTable t = bernoulli_table(120);
  return t;
}

// (2m+n-1)!/(2m)! * prod_{k<=m} 2k/|B_2k|, straight from factorials.
Rational e_mn_oracle(unsigned m, unsigned n) {
  Rational r(factorial(2 * m + n - 1));
  r /= factorial(2 * m);
  for (unsigned k = 1; k <= m; ++k) r *= Rational(Integer(2 * k)) / table().even(k).abs();
  return r;
}

}  // namespace

TEST_CASE("Siegel quotient values") {
  CHECK(siegel_quotient_value(1, table()) == q(-1, 12));
  CHECK(siegel_quotient_value(2, table()) == q(-1, 1440));
  const Rational g14 = euler_siegel_quotient(14, table()).value;
  CHECK(g14 == Rational::parse("-784656624054127574091856571938503861323424419/"
                               "2640135984511485020103596467814400000000"));
  CHECK(truncated_decimal(g14, 2).text == "-297203.10");
  CHECK(rounded_decimal(g14, 2) == "-297203.11");
  CHECK_THROWS_AS(siegel_quotient_value(0, table()), usage_error);
  CHECK_THROWS_AS(siegel_quotient_value(61, table()), capacity_error);
}

TEST_CASE("moduli and Torelli spot values") {
  CHECK(euler_moduli(2, 0, table()).value == q(-1, 240));
  CHECK(euler_moduli(2, 1, table()).value == q(1, 120));
  CHECK(euler_moduli(2, 2, table()).value == q(-1, 40));
  CHECK(chi_torelli(2, 0, table()).value == q(6));
  CHECK(chi_torelli(3, 0, table()).value == q(360));
  CHECK(chi_torelli(2, 1, table()).value == q(-12));
  CHECK(chi_torelli(3, 2, table()).space == SpaceDescriptor(SpaceKind::torelli, 3, 2));
  CHECK_THROWS_AS(euler_moduli(1, 0, table()), usage_error);
  CHECK_THROWS_AS(SpaceDescriptor(SpaceKind::siegel_quotient, 3, 1), usage_error);
  CHECK(parse_space_kind("torelli") == SpaceKind::torelli);
  CHECK(to_string(SpaceKind::siegel_quotient) == "siegel");
  CHECK_THROWS_AS(parse_space_kind("teichmuller"), usage_error);
}

TEST_CASE("moduli recurrences in marked points") {
  for (unsigned g = 2; g <= 20; ++g) {
    CHECK(euler_moduli(g, 1, table()).value == zeta_one_minus_2k(g, table()).value);
    for (unsigned n = 0; n < 8; ++n) {
      const Rational ratio = euler_moduli(g, n + 1, table()).value / euler_moduli(g, n, table()).value;
      CHECK(ratio == Rational(2L - 2L * g - n));
    }
  }
}

TEST_CASE("product formula holds on the grid") {
  for (unsigned g = 2; g <= 30; ++g) {
    for (unsigned n = 0; n <= 10; ++n) {
      const auto c = check_product_formula(g, n, table());
      CHECK(c.holds);
      CHECK(c.moduli == c.torelli * c.siegel);
    }
  }
  const auto c = check_product_formula(2, 0, table());
  CHECK(c.moduli == q(-1, 240));
  CHECK(c.siegel == q(-1, 1440));
  CHECK(c.torelli == q(6));
}

TEST_CASE("e(m,n) spot values") {
  CHECK(e_mn(EmnQuery(1, 1), table()) == q(12));
  CHECK(e_mn(EmnQuery(2, 1), table()) == q(1440));
  const Rational e61 = e_mn(EmnQuery(6, 1), table());
  CHECK(e61 == Rational::parse("376610217984000/691"));
  CHECK(e61.denominator() == 691);
  CHECK_THROWS_AS(EmnQuery(0, 1), usage_error);
  CHECK_THROWS_AS(EmnQuery(1, 0), usage_error);
  CHECK_THROWS_AS(e_mn(EmnQuery(61, 1), table()), capacity_error);
}

TEST_CASE("e(m,n) agrees with the factorial oracle and its recurrences") {
  for (unsigned m = 1; m <= 40; m += 3) {
    for (unsigned n = 1; n <= 12; ++n) {
      const Rational e = e_mn(EmnQuery(m, n), table());
      CHECK(e == e_mn_oracle(m, n));
      CHECK(e.sign() > 0);
      CHECK(e_mn(EmnQuery(m, n + 1), table()) / e == Rational(2L * m + n));
    }
  }
  for (unsigned m = 1; m < 50; ++m) {
    const Rational step = e_mn(EmnQuery(m + 1, 1), table()) / e_mn(EmnQuery(m, 1), table());
    CHECK(step == zeta_one_minus_2k(m + 1, table()).value.abs().reciprocal());
  }
}

TEST_CASE("e(m,1) is the reciprocal of |Siegel quotient|") {
  for (unsigned m = 1; m <= 30; ++m) {
    CHECK(e_mn(EmnQuery(m, 1), table()) == siegel_quotient_value(m, table()).abs().reciprocal());
    CHECK(zeta_reciprocal_product(m, table()) * siegel_quotient_value(m, table()).abs() == Rational(1));
  }
}
