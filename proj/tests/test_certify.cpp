#include <set>

#include "doctest.h"
#include "torelli_euler/arith.hpp"
#include "torelli_euler/certify.hpp"
#include "torelli_euler/errors.hpp"
#include "torelli_euler/euler_char.hpp"
#include "torelli_euler/zeta.hpp"

using namespace torelli_euler;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

const BernoulliTable& table() {
  static const BernoulliTable t = bernoulli_table(400);
  return t;
}

CertifyOptions with(Strategy s) {
  CertifyOptions o;
  o.strategy = s;
  return o;
}

}  // namespace

TEST_CASE("single-term crossing at k = 9") {
  for (std::size_t k = 1; k <= 8; ++k) CHECK(single_term_bound(k, 128).lo() > Rational(1));
  for (std::size_t k = 9; k <= 100; ++k) CHECK(single_term_bound(k, 128).hi() < Rational(1));
}

TEST_CASE("upper bound crossing for n = 1") {
  // mpmath: U(13,1) ~ 5.9736, U(14,1) ~ 6.12718e-6
  const auto u13 = upper_bound_interval(13, 1);
  const auto u14 = upper_bound_interval(14, 1);
  CHECK(u13.value.lo() > q(597, 100));
  CHECK(u13.value.hi() < q(598, 100));
  CHECK(u14.value.lo() > q(612, 100000000));
  CHECK(u14.value.hi() < q(613, 100000000));
  CHECK(u14.value.hi() < Rational(1));
  CHECK(u13.value.lo() > Rational(1));
}

TEST_CASE("upper bound dominates the exact value") {
  for (unsigned m = 1; m <= 50; ++m) {
    for (unsigned n = 1; n <= 5; ++n) {
      CHECK(e_mn(EmnQuery(m, n), table()) <= upper_bound_interval(m, n).value.hi());
    }
  }
}

TEST_CASE("bound chain ratios") {
  const auto chain = bound_chain(1, 60);
  REQUIRE(chain.size() == 60);
  for (const auto& b : chain) {
    if (b.m >= 9) CHECK(b.ratio_next.hi() < Rational(1));
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CHECK(chain[i].m == i + 1);
    CHECK(chain[i].value.lo() > Rational(0));
  }
  CHECK(upper_bound_interval(20, 3, 128).value == upper_bound_interval(20, 3, 128).value);
}

TEST_CASE("threshold search") {
  CHECK(threshold_for_n(1).m0 == 14U);
  CHECK(threshold_for_n(2).m0 == 14U);
  CHECK(threshold_for_n(5).m0 == 15U);
  CHECK(threshold_for_n(10).m0 == 16U);
  CHECK(threshold_for_n(677).m0 == 55U);
  CHECK_FALSE(threshold_for_n(1, 5).m0.has_value());
  const auto r = threshold_for_n(1, 40);
  REQUIRE(r.m0.has_value());
  CHECK(r.chain.front().m == 14);
  CHECK(r.chain.back().m == 40);
  for (const auto& b : r.chain) CHECK(b.value.hi() < Rational(1));
}

TEST_CASE("literal printed bound crosses later than the corrected one") {
  CHECK(remark_literal_bound(36, 677).lo() > Rational(1));
  CHECK(remark_literal_bound(37, 677).hi() < Rational(1));
  CHECK(upper_bound_interval(54, 677).value.lo() > Rational(1));
  CHECK(upper_bound_interval(55, 677).value.hi() < Rational(1));
}

TEST_CASE("certificates for small m") {
  const auto c11 = certify_non_integrality(1, 1, with(Strategy::exact), table());
  REQUIRE(std::holds_alternative<IntegerValue>(c11));
  CHECK(std::get<IntegerValue>(c11).value == 12);
  CHECK_FALSE(certifies_non_integer(c11));

  const auto c61 = certify_non_integrality(6, 1, with(Strategy::exact), table());
  REQUIRE(std::holds_alternative<PrimeWitness>(c61));
  CHECK(std::get<PrimeWitness>(c61).p == 691);
  CHECK(std::get<PrimeWitness>(c61).valuation == -1);
  CHECK(kind_name(c61) == "prime-witness");

  const auto c81 = certify_non_integrality(8, 1, with(Strategy::exact), table());
  REQUIRE(std::holds_alternative<PrimeWitness>(c81));
  CHECK(std::get<PrimeWitness>(c81).p == 691);
  CHECK(p_adic_valuation(std::get<PrimeWitness>(c81).value, Integer(3617)) == -1);

  const auto c141 = certify_non_integrality(14, 1, with(Strategy::automatic), table());
  REQUIRE(std::holds_alternative<MagnitudeWitness>(c141));
  CHECK(std::get<MagnitudeWitness>(c141).upper < Rational(1));
  CHECK(kind_name(c141) == "magnitude");

  const auto c51 = certify_non_integrality(5, 1, with(Strategy::bound), table());
  CHECK(is_inconclusive(c51));
  CHECK_FALSE(certifies_non_integer(c51));
}

TEST_CASE("certificates check out independently") {
  for (unsigned m = 1; m <= 30; ++m) {
    for (unsigned n : {1U, 2U, 7U, 40U}) {
      for (Strategy s : {Strategy::exact, Strategy::automatic, Strategy::bound}) {
        const auto c = certify_non_integrality(m, n, with(s), table());
        CHECK(check_certificate(c, m, n, table()).empty());
      }
    }
  }
  // Tampered certificates are rejected.
  CHECK_FALSE(check_certificate(PrimeWitness{q(12), Integer(691), -1}, 1, 1, table()).empty());
  CHECK_FALSE(check_certificate(IntegerValue{Integer(13)}, 1, 1, table()).empty());
  CHECK_FALSE(check_certificate(MagnitudeWitness{q(1, 2)}, 13, 1, table()).empty());
}

TEST_CASE("strategy choice does not change the verdict") {
  for (unsigned n = 1; n <= 6; ++n) {
    const unsigned m0 = threshold_for_n(n).m0.value();
    for (unsigned m = 6; m <= 40; ++m) {
      const auto a = certify_non_integrality(m, n, with(Strategy::exact), table());
      const auto b = certify_non_integrality(m, n, with(Strategy::bound), table());
      const auto c = certify_non_integrality(m, n, with(Strategy::automatic), table());
      CHECK(certifies_non_integer(a));
      CHECK(certifies_non_integer(c));
      CHECK(certifies_non_integer(b) == (m >= m0));
      CHECK(is_inconclusive(b) == (m < m0));
    }
  }
}

TEST_CASE("capacity and parse errors") {
  CertifyOptions o = with(Strategy::exact);
  CHECK_THROWS_AS(certify_non_integrality(201, 1, o, table()), capacity_error);
  CHECK_THROWS_AS(certify_non_integrality(0, 1, o, table()), usage_error);
  CHECK(parse_strategy("auto") == Strategy::automatic);
  CHECK(to_string(Strategy::bound) == "bound");
  CHECK_THROWS_AS(parse_strategy("guess"), usage_error);
}

TEST_CASE("exact values with no small prime factor") {
  CHECK(std::holds_alternative<IntegerValue>(certify_exact_value(q(7))));
  const auto c = certify_exact_value(q(1, 1000003), 1000);
  REQUIRE(std::holds_alternative<PrimeWitness>(c));
  CHECK(std::get<PrimeWitness>(c).p == 1000003);
  // 1000003 * 1000033 is composite and has no factor below 1000.
  CHECK(is_inconclusive(certify_exact_value(Rational(Integer(1), Integer(1000003) * 1000033), 1000)));
}

TEST_CASE("grid scan") {
  const auto small = scan(Range{1, 5}, Range{1, 1}, with(Strategy::automatic), table());
  REQUIRE(small.size() == 5);
  for (const auto& p : small) CHECK(std::holds_alternative<IntegerValue>(p.certificate));

  const auto direct = scan(Range{6, 13}, Range{1, 1}, with(Strategy::exact), table());
  REQUIRE(direct.size() == 8);
  for (const auto& p : direct) {
    CHECK(certifies_non_integer(p.certificate));
    CHECK(p.remark_prime);
  }

  const auto grid = scan(Range{6, 40}, Range{1, 30}, with(Strategy::automatic), table(), 3);
  CHECK(grid.size() == 35 * 30);
  std::set<std::pair<unsigned, unsigned>> seen;
  for (const auto& p : grid) {
    CHECK(certifies_non_integer(p.certificate));
    seen.emplace(p.m, p.n);
  }
  CHECK(seen.size() == grid.size());
  const auto again = scan(Range{6, 40}, Range{1, 30}, with(Strategy::automatic), table(), 1);
  REQUIRE(again.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(again[i].m == grid[i].m);
    CHECK(again[i].n == grid[i].n);
    CHECK(again[i].certificate == grid[i].certificate);
  }
}

TEST_CASE("monotone decrease of e(m,n)") {
  const auto tail = monotone_decrease_check(1, Range{9, 50}, table());
  CHECK(tail.strictly_decreasing);
  CHECK(tail.increasing_steps.empty());
  CHECK_FALSE(tail.all_below_one);

  const auto head = monotone_decrease_check(1, Range{1, 8}, table());
  CHECK_FALSE(head.strictly_decreasing);
  CHECK_FALSE(head.increasing_steps.empty());

  const auto below = monotone_decrease_check(1, Range{14, 20}, table());
  CHECK(below.all_below_one);
  CHECK(below.strictly_decreasing);
}
