#include "torelli_euler/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "torelli_euler/errors.hpp"

namespace torelli_euler {

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw usage_error("not a decimal integer: '" + std::string(text) + "'");
  }
  return Integer(std::string(text), 10);
}

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw domain_error("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw usage_error("negative denominator in '" + std::string(text) + "'");
  }
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(den_text));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw domain_error("reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(std::move(r));
}

Rational Rational::pow(unsigned exponent) const {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), q_.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), q_.get_den_mpz_t(), exponent);
  return Rational(std::move(r));
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw domain_error("division by zero");
  q_ /= rhs.q_;
  return *this;
}

// Integer scaling only needs one gcd against the opposite part, which is what
// keeps the e(m,n) sweeps linear in operand size.
Rational& Rational::operator*=(const Integer& rhs) {
  if (rhs == 0) {
    q_ = 0;
    return *this;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), q_.get_den_mpz_t(), rhs.get_mpz_t());
  if (g == 1) {
    q_.get_num() *= rhs;
  } else {
    mpz_divexact(q_.get_den_mpz_t(), q_.get_den_mpz_t(), g.get_mpz_t());
    Integer scaled;
    mpz_divexact(scaled.get_mpz_t(), rhs.get_mpz_t(), g.get_mpz_t());
    q_.get_num() *= scaled;
  }
  return *this;
}

Rational& Rational::operator/=(const Integer& rhs) {
  if (rhs == 0) throw domain_error("division by zero");
  Integer g;
  mpz_gcd(g.get_mpz_t(), q_.get_num_mpz_t(), rhs.get_mpz_t());
  Integer scaled;
  mpz_divexact(scaled.get_mpz_t(), rhs.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(q_.get_num_mpz_t(), q_.get_num_mpz_t(), g.get_mpz_t());
  q_.get_den() *= scaled;
  if (sgn(q_.get_den()) < 0) {
    q_.get_den() = -q_.get_den();
    q_.get_num() = -q_.get_num();
  }
  return *this;
}

Rational operator-(const Rational& x) { return Rational(mpq_class(-x.q_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

DecimalExpansion truncated_decimal(const Rational& value, unsigned digits) {
  const Rational a = value.abs();
  const Integer& num = a.numerator();
  const Integer& den = a.denominator();
  Integer whole;
  Integer rem;
  mpz_tdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

  std::string out = value.sign() < 0 ? "-" : "";
  out += whole.get_str();
  if (rem == 0) return {out, true};

  // Long division: the digit string is exactly the truncated expansion.
  std::string frac;
  for (unsigned i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    Integer d;
    mpz_tdiv_qr(d.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
    frac += static_cast<char>('0' + d.get_ui());
  }
  if (!frac.empty()) out += "." + frac;
  return {out, rem == 0};
}

std::string rounded_decimal(const Rational& value, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const Rational scaled = value.abs() * Rational(scale);
  // floor(x + 1/2) on the magnitude: half away from zero.
  const Integer units = (scaled + Rational(Integer(1), Integer(2))).floor();
  Integer whole;
  Integer frac;
  mpz_tdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), units.get_mpz_t(), scale.get_mpz_t());
  std::string out = (value.sign() < 0 && units != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

}  // namespace torelli_euler
