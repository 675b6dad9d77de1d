#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "torelli_euler/rational.hpp"

namespace torelli_euler {

enum class BernoulliAlgorithm { seidel, akiyama_tanigawa, cache };

std::string_view to_string(BernoulliAlgorithm a);
// Throws usage_error for unknown tags.
BernoulliAlgorithm parse_algorithm(std::string_view tag);

// Exact B_0..B_max under the convention B_1 = -1/2, i.e. the Taylor
// coefficients of z/(e^z - 1). Immutable once built.
class BernoulliTable {
 public:
  static constexpr std::string_view convention = "minus-half";

  // Validates every invariant (see validate()) before accepting the values.
  BernoulliTable(std::vector<Rational> values, BernoulliAlgorithm algorithm);

  [[nodiscard]] std::size_t max_index() const { return values_.size() - 1; }
  [[nodiscard]] BernoulliAlgorithm algorithm() const { return algorithm_; }
  [[nodiscard]] const std::vector<Rational>& values() const { return values_; }

  // Throws capacity_error when n > max_index().
  [[nodiscard]] const Rational& operator[](std::size_t n) const;
  // B_{2k}; throws capacity_error when 2k > max_index().
  [[nodiscard]] const Rational& even(std::size_t k) const { return (*this)[2 * k]; }

  [[nodiscard]] bool covers(std::size_t n) const { return n <= max_index(); }

  // Checks B_0 = 1, B_1 = -1/2, B_odd = 0 for odd n >= 3, the sign pattern
  // (-1)^(k+1) B_2k > 0 and the von Staudt-Clausen denominator law.
  // Returns an empty string when valid, else a diagnosis naming the index.
  [[nodiscard]] static std::string validate(const std::vector<Rational>& values);

  friend bool operator==(const BernoulliTable&, const BernoulliTable&) = default;

 private:
  std::vector<Rational> values_;
  BernoulliAlgorithm algorithm_;
};

// Integer tangent-number (Seidel-style boustrophedon) recurrence, converted
// through B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)). Used by default.
BernoulliTable bernoulli_seidel(std::size_t max_index);

// Rational Akiyama-Tanigawa triangle. Kept as an independent oracle.
BernoulliTable bernoulli_akiyama_tanigawa(std::size_t max_index);

BernoulliTable bernoulli_table(std::size_t max_index,
                               BernoulliAlgorithm algorithm = BernoulliAlgorithm::seidel);

// Product of the primes p with (p - 1) | 2k. Throws usage_error when k == 0.
Integer von_staudt_clausen_denominator(std::size_t k);

// Primes p with (p - 1) | 2k, ascending.
std::vector<unsigned long> von_staudt_clausen_primes(std::size_t k);

// Text cache: header `BERN v1 convention=minus-half algorithm=<tag> max=<N>`
// then `<n> <num>/<den>` lines; odd zero entries are omitted on write.
// The write goes to a temp file and is renamed into place under an
// exclusive lock on `<location>.lock`.
void persist_table(const BernoulliTable& table, const std::filesystem::path& location);

// Throws cache_error with a distinct kind per failure (missing file,
// malformed line, version mismatch, invariant violation).
BernoulliTable load_table(const std::filesystem::path& location);

// Loads `location` when it exists and covers `max_index`, otherwise builds a
// seidel table and persists it there.
BernoulliTable load_or_build(const std::filesystem::path& location, std::size_t max_index);

}  // namespace torelli_euler
