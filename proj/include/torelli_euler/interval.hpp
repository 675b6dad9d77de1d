#pragma once

#include <iosfwd>

#include "torelli_euler/rational.hpp"

namespace torelli_euler {

// Closed interval [lo, hi] with exact rational endpoints. Every operation
// returns an enclosure of the exact real result over all points of the
// operands; no floating point is involved anywhere.
class RationalInterval {
 public:
  // Throws usage_error if lo > hi.
  RationalInterval(Rational lo, Rational hi);
  explicit RationalInterval(const Rational& point) : lo_(point), hi_(point) {}

  [[nodiscard]] const Rational& lo() const { return lo_; }
  [[nodiscard]] const Rational& hi() const { return hi_; }
  [[nodiscard]] Rational width() const { return hi_ - lo_; }

  [[nodiscard]] bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  [[nodiscard]] bool contains(const RationalInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  [[nodiscard]] bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  // Integer power by repeated squaring of the interval (not the endpoints),
  // with even powers of a zero-straddling interval handled exactly.
  [[nodiscard]] RationalInterval pow(unsigned exponent) const;

  // Widens the endpoints to dyadic rationals carrying about `bits` significant
  // bits. Keeps long products from dragging enormous denominators along.
  [[nodiscard]] RationalInterval rounded_outward(unsigned bits) const;

  RationalInterval& operator+=(const RationalInterval& rhs);
  RationalInterval& operator-=(const RationalInterval& rhs);
  RationalInterval& operator*=(const RationalInterval& rhs);
  // Throws domain_error when rhs contains zero.
  RationalInterval& operator/=(const RationalInterval& rhs);

  friend RationalInterval operator+(RationalInterval a, const RationalInterval& b) { return a += b; }
  friend RationalInterval operator-(RationalInterval a, const RationalInterval& b) { return a -= b; }
  friend RationalInterval operator*(RationalInterval a, const RationalInterval& b) { return a *= b; }
  friend RationalInterval operator/(RationalInterval a, const RationalInterval& b) { return a /= b; }
  friend RationalInterval operator-(const RationalInterval& a) { return {-a.hi_, -a.lo_}; }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

std::ostream& operator<<(std::ostream& os, const RationalInterval& x);

// Enclosure of pi of width at most 2^(1-precision), from Machin's arctangent
// formula with the alternating-series remainder bound. precision >= 8.
RationalInterval pi_interval(unsigned precision);

}  // namespace torelli_euler
