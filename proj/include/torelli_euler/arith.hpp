#pragma once

#include <cstdint>
#include <optional>

#include "torelli_euler/rational.hpp"

namespace torelli_euler {

// a!/b! as the product (b+1)(b+2)...a; 1 when a == b. Throws usage_error if b > a.
Integer rising_factorial_ratio(std::uint64_t a, std::uint64_t b);

Integer factorial(std::uint64_t n);

// Miller-Rabin through GMP; reps=25 unless told otherwise.
bool is_probable_prime(const Integer& n, int reps = 25);

// v_p(numerator) - v_p(denominator). Throws domain_error for q == 0 and
// usage_error when p fails a probable-prime test.
long p_adic_valuation(const Rational& q, const Integer& p);

// Exponent of p in n (n != 0). No primality check; used on hot paths.
unsigned long multiplicity(const Integer& n, unsigned long p);

// Smallest prime factor of n (n >= 2) found by trial division with divisors
// up to `limit`; std::nullopt when none divides.
std::optional<unsigned long> smallest_prime_factor_below(const Integer& n, unsigned long limit);

}  // namespace torelli_euler
