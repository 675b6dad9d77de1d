#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "torelli_euler/bernoulli.hpp"
#include "torelli_euler/interval.hpp"
#include "torelli_euler/rational.hpp"

namespace torelli_euler {

// --- certificates -----------------------------------------------------------

// e(m,n) is an integer; the reduced value has denominator 1.
struct IntegerValue {
  Integer value;
  friend bool operator==(const IntegerValue&, const IntegerValue&) = default;
};

// v_p(value) < 0, so value is not an integer.
struct PrimeWitness {
  Rational value;
  Integer p;
  long valuation = 0;
  friend bool operator==(const PrimeWitness&, const PrimeWitness&) = default;
};

// 0 < e(m,n) < upper <= 1: positivity from the factor structure, the upper
// endpoint from the certified bound U(m,n).
struct MagnitudeWitness {
  static constexpr std::string_view statement = "0 < e(m,n) < 1";
  Rational upper;
  friend bool operator==(const MagnitudeWitness&, const MagnitudeWitness&) = default;
};

// Neither strategy could decide. Never to be read as integer or non-integer.
struct Inconclusive {
  std::string reason;
  friend bool operator==(const Inconclusive&, const Inconclusive&) = default;
};

using IntegralityCertificate = std::variant<IntegerValue, PrimeWitness, MagnitudeWitness, Inconclusive>;

std::string_view kind_name(const IntegralityCertificate& c);  // integer | prime-witness | magnitude | inconclusive
bool certifies_non_integer(const IntegralityCertificate& c);
bool is_inconclusive(const IntegralityCertificate& c);

// --- the U(m,n) bound -------------------------------------------------------

// U(m,n) = (2m+n-1)!/(2m)! * prod_{k=1}^{m} (2 pi)^(2k) / (2 (2k-1)!),
// an upper bound for e(m,n), together with the ratio U(m+1,n)/U(m,n)
// = (2m+n+1)(2m+n)/((2m+2)(2m+1)) * (2 pi)^(2m+2) / (2 (2m+1)!).
struct BoundSequence {
  unsigned m = 0;
  unsigned n = 0;
  RationalInterval value{Rational(0)};
  RationalInterval ratio_next{Rational(0)};
};

BoundSequence upper_bound_interval(unsigned m, unsigned n, unsigned precision = 128);

// U(1,n) .. U(m_max,n) in one pass.
std::vector<BoundSequence> bound_chain(unsigned n, unsigned m_max, unsigned precision = 128);

// The closing display of the remark as literally printed:
// (2m+n-1)!/(2m)! * ((2 pi)^(2m+2) / (2 (2m+1)!))^m. Not an upper bound for
// e(m,n) in general; evaluated only so it can be reported next to U(m,n).
RationalInterval remark_literal_bound(unsigned m, unsigned n, unsigned precision = 128);

// --- certification ----------------------------------------------------------

enum class Strategy { automatic, exact, bound };
std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view tag);  // auto | exact | bound

inline constexpr unsigned standard_exact_limit = 200;  // m <= 200 (2m <= 400)
inline constexpr unsigned deep_exact_limit = 1470;

struct CertifyOptions {
  Strategy strategy = Strategy::automatic;
  unsigned exact_limit = standard_exact_limit;  // largest m handled exactly by auto
  unsigned precision = 128;
  unsigned long trial_division_limit = 1UL << 20;
};

// Certificate for an exact rational: IntegerValue if the denominator is 1,
// else a PrimeWitness using 691, then 3617, then the smallest prime factor of
// the denominator.
IntegralityCertificate certify_exact_value(const Rational& value, unsigned long trial_division_limit = 1UL << 20);

// Throws capacity_error when strategy == exact and the table lacks B_2m.
// Every emitted certificate passes check_certificate; a failure there is a
// bug and surfaces as std::logic_error.
IntegralityCertificate certify_non_integrality(unsigned m, unsigned n, const CertifyOptions& options,
                                               const BernoulliTable& table);

// Independent re-check of a certificate for e(m,n). Empty string when sound,
// otherwise the reason. Uses the table for the exact value when it covers 2m.
std::string check_certificate(const IntegralityCertificate& c, unsigned m, unsigned n,
                              const BernoulliTable& table, unsigned precision = 128);

// --- threshold ------------------------------------------------------------

struct ThresholdResult {
  unsigned n = 0;
  unsigned m_cap = 0;
  std::optional<unsigned> m0;          // empty: not found below the cap
  std::vector<BoundSequence> chain;    // U(m0..m_cap, n) when found
};

// Smallest m0 <= m_cap with U(m0,n).hi < 1 and ratio_next.hi < 1 for every
// m in [m0, m_cap].
ThresholdResult threshold_for_n(unsigned n, unsigned m_cap = 200, unsigned precision = 128);

// --- grids ----------------------------------------------------------------

struct Range {
  unsigned lo = 1;
  unsigned hi = 1;
  [[nodiscard]] std::size_t size() const { return hi >= lo ? hi - lo + 1 : 0; }
};

inline bool is_remark_prime(const Integer& p) { return p == 691 || p == 3617; }

struct ScanPoint {
  unsigned m = 0;
  unsigned n = 0;
  IntegralityCertificate certificate;
  bool remark_prime = false;  // PrimeWitness with p in {691, 3617}
};

using ScanVisitor = std::function<void(const ScanPoint&)>;

// Certifies every (m,n) in the grid. m is processed in ascending order; the
// n-range of each m is split across `threads` workers (0 = hardware), so the
// visitor is called concurrently and must be thread-safe. Within one worker
// points arrive in ascending n. Nothing is retained after the visit.
void scan_visit(Range m, Range n, const CertifyOptions& options, const BernoulliTable& table,
                const ScanVisitor& visitor, unsigned threads = 0);

// Collecting form, ordered by (m, n). Keeps every exact value; for large
// grids prefer scan_visit.
std::vector<ScanPoint> scan(Range m, Range n, const CertifyOptions& options, const BernoulliTable& table,
                            unsigned threads = 0);

// --- monotonicity -----------------------------------------------------------

struct MonotoneReport {
  unsigned n = 0;
  Range m;
  bool strictly_decreasing = false;
  bool all_below_one = false;
  std::vector<unsigned> increasing_steps;  // m with e(m+1,n) >= e(m,n)
};

MonotoneReport monotone_decrease_check(unsigned n, Range m, const BernoulliTable& table);

}  // namespace torelli_euler
