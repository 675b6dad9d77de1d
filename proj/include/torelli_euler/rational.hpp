#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace torelli_euler {

using Integer = mpz_class;

// Parses a base-10 integer with optional leading '-'. Throws usage_error on
// anything else (no whitespace, no '+', no empty string).
Integer parse_integer(std::string_view text);

// Arbitrary-precision fraction, always stored in lowest terms with a positive
// denominator. Zero is 0/1. Every constructor and arithmetic result is reduced.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value) : q_(value) {}
  // Throws domain_error when denominator is zero.
  Rational(const Integer& numerator, const Integer& denominator);

  // Accepts "a" or "a/b" in base 10.
  static Rational parse(std::string_view text);

  [[nodiscard]] const Integer& numerator() const { return q_.get_num(); }
  [[nodiscard]] const Integer& denominator() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }

  [[nodiscard]] Rational abs() const;
  [[nodiscard]] Rational reciprocal() const;  // throws domain_error on zero
  [[nodiscard]] Rational pow(unsigned exponent) const;
  [[nodiscard]] Integer floor() const;
  [[nodiscard]] Integer ceil() const;

  // "n" for integers, "n/d" otherwise.
  [[nodiscard]] std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);
  Rational& operator*=(const Integer& rhs);
  Rational& operator/=(const Integer& rhs);

  friend Rational operator-(const Rational& x);
  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend Rational operator*(Rational lhs, const Integer& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Integer& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Truncated (toward zero) decimal expansion with `digits` places after the
// point. Trailing zeros are not padded once the expansion terminates.
// `exact` reports whether the printed digits are the full expansion.
struct DecimalExpansion {
  std::string text;
  bool exact = false;
};
DecimalExpansion truncated_decimal(const Rational& value, unsigned digits);

// Round-half-away-from-zero to `digits` places; always exactly `digits`
// places are printed.
std::string rounded_decimal(const Rational& value, unsigned digits);

}  // namespace torelli_euler
