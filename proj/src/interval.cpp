#include "torelli_euler/interval.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <utility>

#include "torelli_euler/errors.hpp"

namespace torelli_euler {

RationalInterval::RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw usage_error("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

RationalInterval& RationalInterval::operator+=(const RationalInterval& rhs) {
  lo_ += rhs.lo_;
  hi_ += rhs.hi_;
  return *this;
}

RationalInterval& RationalInterval::operator-=(const RationalInterval& rhs) {
  lo_ -= rhs.hi_;
  hi_ -= rhs.lo_;
  return *this;
}

RationalInterval& RationalInterval::operator*=(const RationalInterval& rhs) {
  // Fast path for the common all-positive case.
  if (lo_.sign() >= 0 && rhs.lo_.sign() >= 0) {
    lo_ *= rhs.lo_;
    hi_ *= rhs.hi_;
    return *this;
  }
  std::array<Rational, 4> p{lo_ * rhs.lo_, lo_ * rhs.hi_, hi_ * rhs.lo_, hi_ * rhs.hi_};
  const auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  Rational lo = *mn;
  Rational hi = *mx;
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RationalInterval& RationalInterval::operator/=(const RationalInterval& rhs) {
  if (rhs.contains_zero()) {
    throw domain_error("interval division by [" + rhs.lo_.str() + ", " + rhs.hi_.str() +
                       "], which contains zero");
  }
  return *this *= RationalInterval(rhs.hi_.reciprocal(), rhs.lo_.reciprocal());
}

RationalInterval RationalInterval::pow(unsigned exponent) const {
  if (exponent == 0) return RationalInterval(Rational(1));
  const Rational a = lo_.pow(exponent);
  const Rational b = hi_.pow(exponent);
  if (exponent % 2 == 1) return {a, b};
  if (lo_.sign() >= 0) return {a, b};
  if (hi_.sign() <= 0) return {b, a};
  return {Rational(0), std::max(a, b)};
}

namespace {

// floor(x * 2^s) / 2^s for signed s.
Rational round_dyadic(const Rational& x, long s, bool up) {
  Integer num = x.numerator();
  Integer den = x.denominator();
  if (s >= 0) {
    num <<= static_cast<mp_bitcnt_t>(s);
  } else {
    den <<= static_cast<mp_bitcnt_t>(-s);
  }
  Integer q;
  if (up) {
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  Integer scale = 1;
  if (s >= 0) {
    scale <<= static_cast<mp_bitcnt_t>(s);
    return Rational(q, scale);
  }
  q <<= static_cast<mp_bitcnt_t>(-s);
  return Rational(q);
}

long magnitude_bits(const Rational& x) {
  return static_cast<long>(mpz_sizeinbase(x.numerator().get_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(x.denominator().get_mpz_t(), 2));
}

Rational round_endpoint(const Rational& x, unsigned bits, bool up) {
  if (x.is_zero()) return x;
  // Already short enough: leave exact.
  if (mpz_sizeinbase(x.denominator().get_mpz_t(), 2) <= bits + 2 &&
      mpz_sizeinbase(x.numerator().get_mpz_t(), 2) <= bits + 2) {
    return x;
  }
  const long s = static_cast<long>(bits) - magnitude_bits(x);
  return round_dyadic(x, s, up);
}

}  // namespace

RationalInterval RationalInterval::rounded_outward(unsigned bits) const {
  return {round_endpoint(lo_, bits, false), round_endpoint(hi_, bits, true)};
}

std::ostream& operator<<(std::ostream& os, const RationalInterval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

namespace {

// Enclosure of atan(1/x) for integer x >= 2 whose width is at most `tol`.
// The series alternates with strictly decreasing terms, so the partial sum
// after N terms is within the (N+1)-th term of the limit.
RationalInterval atan_inverse(unsigned long x, const Rational& tol) {
  const Integer x2 = Integer(x) * x;
  Integer power = x;  // x^(2j+1)
  Rational sum;
  for (unsigned long j = 0;; ++j) {
    const Rational term(Integer(1), Integer(2 * j + 1) * power);
    if (term + term <= tol) {
      return {sum - term, sum + term};
    }
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    power *= x2;
  }
}

}  // namespace

RationalInterval pi_interval(unsigned precision) {
  if (precision < 8) throw usage_error("pi_interval precision must be >= 8 bits");
  // Budget: series width 2^-(p+1), dyadic rounding adds at most 2^-(p+2).
  Integer two_p = 1;
  two_p <<= precision + 6;
  const Rational tol(Integer(1), two_p);
  const RationalInterval a = atan_inverse(5, tol);
  const RationalInterval b = atan_inverse(239, tol);
  RationalInterval pi = RationalInterval(Rational(16)) * a - RationalInterval(Rational(4)) * b;
  // Absolute rounding at 2^-(p+3): pi is in [3,4] so relative bits p+5 suffice.
  return pi.rounded_outward(precision + 5);
}

}  // namespace torelli_euler
