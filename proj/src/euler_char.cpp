#include "torelli_euler/euler_char.hpp"

#include "torelli_euler/arith.hpp"
#include "torelli_euler/errors.hpp"
#include "torelli_euler/zeta.hpp"

namespace torelli_euler {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::siegel_quotient:
      return "siegel";
    case SpaceKind::moduli:
      return "moduli";
    case SpaceKind::torelli:
      return "torelli";
  }
  return "unknown";
}

SpaceKind parse_space_kind(std::string_view tag) {
  if (tag == "siegel") return SpaceKind::siegel_quotient;
  if (tag == "moduli") return SpaceKind::moduli;
  if (tag == "torelli") return SpaceKind::torelli;
  throw usage_error("unknown space '" + std::string(tag) + "' (expected siegel, moduli or torelli)");
}

SpaceDescriptor::SpaceDescriptor(SpaceKind kind, unsigned g, unsigned n) : kind_(kind), g_(g), n_(n) {
  if (g < 2) throw usage_error("genus must be >= 2, got " + std::to_string(g));
  if (kind == SpaceKind::siegel_quotient && n != 0) {
    throw usage_error("the Siegel quotient has no marked points");
  }
}

EmnQuery::EmnQuery(unsigned m, unsigned n) : m_(m), n_(n) {
  if (m < 1 || n < 1) {
    throw usage_error("e(m,n) needs m, n >= 1, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  }
}

namespace {

// (-1)^(n-1) (2g+n-3)!/(2g-2)!, the marked-point factor shared by the
// moduli and Torelli formulas (n >= 1).
Rational marked_point_factor(unsigned g, unsigned n) {
  Rational f(rising_factorial_ratio(2ULL * g + n - 3, 2ULL * g - 2));
  return (n % 2 == 1) ? f : -f;
}

}  // namespace

Rational siegel_quotient_value(unsigned g, const BernoulliTable& table) {
  if (g < 1) throw usage_error("siegel quotient needs g >= 1");
  Rational product(1);
  for (unsigned k = 1; k <= g; ++k) product *= zeta_one_minus_2k(k, table).value;
  return product;
}

EulerChar euler_siegel_quotient(unsigned g, const BernoulliTable& table) {
  SpaceDescriptor space(SpaceKind::siegel_quotient, g);
  return {space, siegel_quotient_value(g, table)};
}

EulerChar euler_moduli(unsigned g, unsigned n, const BernoulliTable& table) {
  SpaceDescriptor space(SpaceKind::moduli, g, n);
  const Rational zeta = zeta_one_minus_2k(g, table).value;
  if (n == 0) return {space, zeta / Rational(2 - 2 * static_cast<long>(g))};
  return {space, marked_point_factor(g, n) * zeta};
}

EulerChar chi_torelli(unsigned g, unsigned n, const BernoulliTable& table) {
  SpaceDescriptor space(SpaceKind::torelli, g, n);
  Rational product(1);
  for (unsigned k = 1; k + 1 <= g; ++k) product /= zeta_one_minus_2k(k, table).value;
  if (n == 0) return {space, product / Rational(2 - 2 * static_cast<long>(g))};
  return {space, marked_point_factor(g, n) * product};
}

Rational zeta_reciprocal_product(unsigned m, const BernoulliTable& table) {
  Rational product(1);
  for (unsigned k = 1; k <= m; ++k) {
    product *= Integer(2UL * k);
    product /= table.even(k).abs().numerator();
    product *= table.even(k).denominator();
  }
  return product;
}

Rational e_mn(const EmnQuery& q, const BernoulliTable& table) {
  if (!table.covers(2ULL * q.m())) {
    throw capacity_error("e(" + std::to_string(q.m()) + "," + std::to_string(q.n()) + ") needs B_" +
                         std::to_string(2 * q.m()) + ", table stops at B_" + std::to_string(table.max_index()));
  }
  Rational value = zeta_reciprocal_product(q.m(), table);
  value *= rising_factorial_ratio(2ULL * q.m() + q.n() - 1, 2ULL * q.m());
  return value;
}

ProductFormulaCheck check_product_formula(unsigned g, unsigned n, const BernoulliTable& table) {
  ProductFormulaCheck check;
  check.g = g;
  check.n = n;
  check.moduli = euler_moduli(g, n, table).value;
  check.torelli = chi_torelli(g, n, table).value;
  check.siegel = euler_siegel_quotient(g, table).value;
  check.holds = (check.moduli == check.torelli * check.siegel);
  return check;
}

}  // namespace torelli_euler
