#include "torelli_euler/arith.hpp"

#include <string>

#include "torelli_euler/errors.hpp"

namespace torelli_euler {

Integer rising_factorial_ratio(std::uint64_t a, std::uint64_t b) {
  if (b > a) {
    throw usage_error("rising_factorial_ratio: b=" + std::to_string(b) + " exceeds a=" +
                      std::to_string(a));
  }
  Integer result = 1;
  // Balanced splitting would be faster for huge spans; spans here are < 4000.
  for (std::uint64_t j = b + 1; j <= a; ++j) result *= static_cast<unsigned long>(j);
  return result;
}

Integer factorial(std::uint64_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

bool is_probable_prime(const Integer& n, int reps) {
  return mpz_probab_prime_p(n.get_mpz_t(), reps) > 0;
}

unsigned long multiplicity(const Integer& n, unsigned long p) {
  if (n == 0 || p < 2) return 0;
  unsigned long count = 0;
  Integer rest = n;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    ++count;
  }
  return count;
}

namespace {

long valuation_of(const Integer& n, const Integer& p) {
  if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) return 0;
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace

long p_adic_valuation(const Rational& q, const Integer& p) {
  if (q.is_zero()) throw domain_error("p-adic valuation of zero is undefined");
  if (p < 2 || !is_probable_prime(p)) throw usage_error("valuation base " + p.get_str() + " is not prime");
  return valuation_of(q.numerator(), p) - valuation_of(q.denominator(), p);
}

std::optional<unsigned long> smallest_prime_factor_below(const Integer& n, unsigned long limit) {
  if (n < 2) return std::nullopt;
  if (limit >= 2 && mpz_even_p(n.get_mpz_t())) return 2UL;
  // The first odd divisor found is necessarily prime.
  const bool fits = mpz_sizeinbase(n.get_mpz_t(), 2) <= 62;
  const unsigned long small = fits ? n.get_ui() : 0;
  for (unsigned long d = 3; d <= limit; d += 2) {
    if (fits && d > small / d) return small <= limit ? std::optional<unsigned long>(small) : std::nullopt;
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) return d;
  }
  return std::nullopt;
}

}  // namespace torelli_euler
