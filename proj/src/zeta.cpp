#include "torelli_euler/zeta.hpp"

#include "torelli_euler/arith.hpp"
#include "torelli_euler/errors.hpp"

namespace torelli_euler {

ZetaValue zeta_one_minus_2k(std::size_t k, const BernoulliTable& table) {
  if (k == 0) throw usage_error("zeta(1-2k) needs k >= 1");
  Rational value = -table.even(k);
  value /= Integer(static_cast<unsigned long>(2 * k));
  return {k, std::move(value)};
}

RationalInterval single_term_bound(std::size_t k, const RationalInterval& pi) {
  if (k == 0) throw usage_error("single_term_bound needs k >= 1");
  const RationalInterval two_pi = RationalInterval(Rational(2)) * pi;
  const Rational denom(Integer(2 * factorial(2 * k - 1)));
  return two_pi.pow(static_cast<unsigned>(2 * k)) / RationalInterval(denom);
}

RationalInterval single_term_bound(std::size_t k, unsigned precision) {
  return single_term_bound(k, pi_interval(precision));
}

RationalInterval zeta_abs_lower_bound(std::size_t k, unsigned precision) {
  if (k == 0) throw usage_error("zeta_abs_lower_bound needs k >= 1");
  // zeta(2k) - 1 > 2^-2k, so pi carries 2k extra bits to keep the gap visible.
  const auto working = static_cast<unsigned>(precision + 2 * k + 8);
  const RationalInterval two_pi = RationalInterval(Rational(2)) * pi_interval(working);
  const Rational numer(Integer(2 * factorial(2 * k - 1)));
  return RationalInterval(numer) / two_pi.pow(static_cast<unsigned>(2 * k));
}

}  // namespace torelli_euler
