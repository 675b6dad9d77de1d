#include "torelli_euler/certify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "torelli_euler/arith.hpp"
#include "torelli_euler/errors.hpp"
#include "torelli_euler/euler_char.hpp"
#include "torelli_euler/zeta.hpp"

namespace torelli_euler {

std::string_view kind_name(const IntegralityCertificate& c) {
  struct {
    std::string_view operator()(const IntegerValue&) const { return "integer"; }
    std::string_view operator()(const PrimeWitness&) const { return "prime-witness"; }
    std::string_view operator()(const MagnitudeWitness&) const { return "magnitude"; }
    std::string_view operator()(const Inconclusive&) const { return "inconclusive"; }
  } visitor;
  return std::visit(visitor, c);
}

bool certifies_non_integer(const IntegralityCertificate& c) {
  return std::holds_alternative<PrimeWitness>(c) || std::holds_alternative<MagnitudeWitness>(c);
}

bool is_inconclusive(const IntegralityCertificate& c) { return std::holds_alternative<Inconclusive>(c); }

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic:
      return "auto";
    case Strategy::exact:
      return "exact";
    case Strategy::bound:
      return "bound";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view tag) {
  if (tag == "auto") return Strategy::automatic;
  if (tag == "exact") return Strategy::exact;
  if (tag == "bound") return Strategy::bound;
  throw usage_error("unknown strategy '" + std::string(tag) + "' (expected auto, exact or bound)");
}

namespace {

unsigned working_bits(unsigned precision) { return precision + 16; }

// Walks k = 1, 2, ... maintaining enclosures of
//   term  = (2 pi)^(2k) / (2 (2k-1)!)
//   prod  = prod_{j<=k} term_j
// with identical rounding on every path, so U(m,n) is reproducible bit for
// bit no matter which caller computes it.
class TermWalker {
 public:
  explicit TermWalker(unsigned precision)
      : bits_(working_bits(precision)),
        two_pi_sq_((RationalInterval(Rational(2)) * pi_interval(bits_)).pow(2).rounded_outward(bits_)),
        term_((two_pi_sq_ / RationalInterval(Rational(2))).rounded_outward(bits_)),
        prod_(term_) {}

  [[nodiscard]] unsigned k() const { return k_; }
  [[nodiscard]] const RationalInterval& term() const { return term_; }
  [[nodiscard]] const RationalInterval& product() const { return prod_; }
  [[nodiscard]] unsigned bits() const { return bits_; }

  // term_{k+1} without advancing.
  [[nodiscard]] RationalInterval next_term() const {
    const Rational step(Integer(Integer(2UL * k_) * (2UL * k_ + 1)));
    return (term_ * two_pi_sq_ / RationalInterval(step)).rounded_outward(bits_);
  }

  void advance() {
    term_ = next_term();
    ++k_;
    prod_ = (prod_ * term_).rounded_outward(bits_);
  }

 private:
  unsigned bits_;
  RationalInterval two_pi_sq_;
  RationalInterval term_;
  RationalInterval prod_;
  unsigned k_ = 1;
};

RationalInterval scale(const RationalInterval& x, const Integer& factor, unsigned bits) {
  return (x * RationalInterval(Rational(factor))).rounded_outward(bits);
}

BoundSequence bound_at(const TermWalker& w, unsigned n) {
  const unsigned m = w.k();
  BoundSequence b;
  b.m = m;
  b.n = n;
  b.value = scale(w.product(), rising_factorial_ratio(2ULL * m + n - 1, 2ULL * m), w.bits());
  const Rational growth(Integer(2UL * m + n + 1) * (2UL * m + n), Integer(2UL * m + 2) * (2UL * m + 1));
  b.ratio_next = (w.next_term() * RationalInterval(growth)).rounded_outward(w.bits());
  return b;
}

void require_mn(unsigned m, unsigned n) {
  if (m < 1 || n < 1) {
    throw usage_error("need m, n >= 1, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  }
}

IntegralityCertificate prime_witness(const Rational& value, const Integer& p) {
  // value is reduced, so p divides only the denominator.
  const long v = -static_cast<long>(multiplicity(value.denominator(), p.get_ui()));
  return PrimeWitness{value, p, v};
}

std::string check_prime_witness(const PrimeWitness& w) {
  if (w.value.is_zero()) return "prime witness for zero";
  long v = 0;
  try {
    v = p_adic_valuation(w.value, w.p);
  } catch (const std::exception& e) {
    return e.what();
  }
  if (v != w.valuation) {
    return "recorded valuation " + std::to_string(w.valuation) + " but v_" + w.p.get_str() + " = " + std::to_string(v);
  }
  if (v >= 0) return "valuation " + std::to_string(v) + " is not negative";
  return {};
}

std::string check_magnitude(const MagnitudeWitness& w, const RationalInterval& bound, const Rational* exact) {
  if (!(w.upper < Rational(1))) return "upper endpoint " + w.upper.str() + " is not below 1";
  if (bound.hi() > w.upper) return "recorded upper endpoint is below the recomputed U(m,n).hi";
  if (exact != nullptr) {
    if (exact->sign() <= 0) return "e(m,n) is not positive";
    if (*exact > w.upper) return "e(m,n) exceeds the recorded upper bound";
  }
  return {};
}

void ensure_sound(const std::string& reason, unsigned m, unsigned n) {
  if (!reason.empty()) {
    throw std::logic_error("unsound certificate for e(" + std::to_string(m) + "," + std::to_string(n) +
                           "): " + reason);
  }
}

}  // namespace

std::vector<BoundSequence> bound_chain(unsigned n, unsigned m_max, unsigned precision) {
  require_mn(std::max(m_max, 1U), n);
  std::vector<BoundSequence> out;
  out.reserve(m_max);
  TermWalker w(precision);
  for (unsigned m = 1; m <= m_max; ++m) {
    if (m > 1) w.advance();
    out.push_back(bound_at(w, n));
  }
  return out;
}

BoundSequence upper_bound_interval(unsigned m, unsigned n, unsigned precision) {
  require_mn(m, n);
  return bound_chain(n, m, precision).back();
}

RationalInterval remark_literal_bound(unsigned m, unsigned n, unsigned precision) {
  require_mn(m, n);
  const unsigned bits = working_bits(precision);
  const RationalInterval term = single_term_bound(m + 1, pi_interval(bits)).rounded_outward(bits);
  RationalInterval power(Rational(1));
  for (unsigned i = 0; i < m; ++i) power = (power * term).rounded_outward(bits);
  return scale(power, rising_factorial_ratio(2ULL * m + n - 1, 2ULL * m), bits);
}

IntegralityCertificate certify_exact_value(const Rational& value, unsigned long trial_division_limit) {
  if (value.is_integer()) return IntegerValue{value.numerator()};
  const Integer& den = value.denominator();
  for (unsigned long p : {691UL, 3617UL}) {
    if (mpz_divisible_ui_p(den.get_mpz_t(), p)) return prime_witness(value, Integer(p));
  }
  if (auto p = smallest_prime_factor_below(den, trial_division_limit)) return prime_witness(value, Integer(*p));
  // No small factor: the denominator itself may be prime.
  if (is_probable_prime(den)) {
    return PrimeWitness{value, den, -1};
  }
  return Inconclusive{"denominator has no prime factor below " + std::to_string(trial_division_limit) +
                      " and is composite"};
}

std::string check_certificate(const IntegralityCertificate& c, unsigned m, unsigned n, const BernoulliTable& table,
                              unsigned precision) {
  std::optional<Rational> exact;
  if (table.covers(2ULL * m)) exact = e_mn(EmnQuery(m, n), table);

  if (const auto* iv = std::get_if<IntegerValue>(&c)) {
    if (!exact) return "integer certificate cannot be checked without B_" + std::to_string(2 * m);
    if (!exact->is_integer() || exact->numerator() != iv->value) return "e(m,n) = " + exact->str() + " differs";
    return {};
  }
  if (const auto* pw = std::get_if<PrimeWitness>(&c)) {
    if (exact && *exact != pw->value) return "witness value differs from e(m,n)";
    return check_prime_witness(*pw);
  }
  if (const auto* mw = std::get_if<MagnitudeWitness>(&c)) {
    const BoundSequence b = upper_bound_interval(m, n, precision);
    return check_magnitude(*mw, b.value, exact ? &*exact : nullptr);
  }
  return {};
}

IntegralityCertificate certify_non_integrality(unsigned m, unsigned n, const CertifyOptions& options,
                                               const BernoulliTable& table) {
  const EmnQuery query(m, n);
  std::optional<Rational> exact_value;
  auto exact = [&]() -> IntegralityCertificate {
    exact_value = e_mn(query, table);  // capacity_error if the table is short
    return certify_exact_value(*exact_value, options.trial_division_limit);
  };
  std::optional<BoundSequence> bound_seq;
  auto bound = [&]() -> std::optional<IntegralityCertificate> {
    bound_seq = upper_bound_interval(m, n, options.precision);
    if (bound_seq->value.hi() < Rational(1)) return MagnitudeWitness{bound_seq->value.hi()};
    return std::nullopt;
  };

  IntegralityCertificate cert = Inconclusive{};
  switch (options.strategy) {
    case Strategy::exact:
      cert = exact();
      break;
    case Strategy::bound:
      if (auto b = bound()) {
        cert = *b;
      } else {
        cert = Inconclusive{"U(m,n) upper endpoint " + truncated_decimal(bound_seq->value.hi(), 6).text +
                            " is not below 1"};
      }
      break;
    case Strategy::automatic:
      if (auto b = bound()) {
        cert = *b;
      } else if (m <= options.exact_limit && table.covers(2ULL * m)) {
        cert = exact();
      } else {
        cert = Inconclusive{"bound inconclusive and m=" + std::to_string(m) + " is beyond the exact limit " +
                            std::to_string(options.exact_limit) + " or the Bernoulli table"};
      }
      break;
  }

  // Soundness, recomputed from scratch except where the value is at hand.
  if (const auto* pw = std::get_if<PrimeWitness>(&cert)) {
    ensure_sound(check_prime_witness(*pw), m, n);
  } else if (const auto* iv = std::get_if<IntegerValue>(&cert)) {
    ensure_sound(exact_value && exact_value->is_integer() && exact_value->numerator() == iv->value
                     ? std::string{}
                     : std::string{"integer certificate without an integral exact value"},
                 m, n);
  } else if (const auto* mw = std::get_if<MagnitudeWitness>(&cert)) {
    if (!exact_value && table.covers(2ULL * m)) exact_value = e_mn(query, table);
    ensure_sound(check_magnitude(*mw, bound_seq->value, exact_value ? &*exact_value : nullptr), m, n);
  }
  return cert;
}

ThresholdResult threshold_for_n(unsigned n, unsigned m_cap, unsigned precision) {
  require_mn(std::max(m_cap, 1U), n);
  ThresholdResult result;
  result.n = n;
  result.m_cap = m_cap;
  if (m_cap == 0) return result;
  std::vector<BoundSequence> chain = bound_chain(n, m_cap, precision);

  const Rational one(1);
  std::optional<std::size_t> start;
  for (std::size_t i = chain.size(); i-- > 0;) {
    if (!(chain[i].ratio_next.hi() < one)) break;
    if (chain[i].value.hi() < one) start = i;
  }
  if (start) {
    result.m0 = chain[*start].m;
    result.chain.assign(chain.begin() + static_cast<std::ptrdiff_t>(*start), chain.end());
  }
  return result;
}

void scan_visit(Range m_range, Range n_range, const CertifyOptions& options, const BernoulliTable& table,
                const ScanVisitor& visitor, unsigned threads) {
  if (m_range.size() == 0 || n_range.size() == 0) throw usage_error("scan ranges must be nonempty");
  require_mn(m_range.lo, n_range.lo);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_range.size()));

  const bool may_bound = options.strategy != Strategy::exact;
  const bool use_exact_at_all = options.strategy != Strategy::bound;
  if (options.strategy == Strategy::exact && !table.covers(2ULL * m_range.hi)) {
    throw capacity_error("exact scan to m=" + std::to_string(m_range.hi) + " needs B_" +
                         std::to_string(2 * m_range.hi) + ", table stops at B_" + std::to_string(table.max_index()));
  }

  std::optional<TermWalker> walker;
  if (may_bound) walker.emplace(options.precision);
  std::optional<Rational> product;  // prod_{k<=m} 1/|zeta(1-2k)|
  unsigned product_m = 0;

  for (unsigned m = m_range.lo; m <= m_range.hi; ++m) {
    if (walker) {
      while (walker->k() < m) walker->advance();
    }
    const bool exact_here = use_exact_at_all && table.covers(2ULL * m) &&
                            (options.strategy == Strategy::exact || m <= options.exact_limit);
    if (exact_here) {
      if (!product || product_m + 1 != m) {
        product = zeta_reciprocal_product(m, table);
      } else {
        *product *= Integer(2UL * m);
        *product /= table.even(m).abs().numerator();
        *product *= table.even(m).denominator();
      }
      product_m = m;
    }

    auto work = [&](unsigned n_lo, unsigned n_hi) {
      std::optional<Rational> value;
      if (exact_here) {
        value = *product;
        *value *= rising_factorial_ratio(2ULL * m + n_lo - 1, 2ULL * m);
      }
      std::optional<RationalInterval> bound;
      if (walker) bound = scale(walker->product(), rising_factorial_ratio(2ULL * m + n_lo - 1, 2ULL * m), walker->bits());
      Integer rising = rising_factorial_ratio(2ULL * m + n_lo - 1, 2ULL * m);

      for (unsigned n = n_lo; n <= n_hi; ++n) {
        ScanPoint point{m, n, Inconclusive{}, false};
        if (walker && n != n_lo) bound = scale(walker->product(), rising, walker->bits());
        if (bound && bound->hi() < Rational(1)) {
          MagnitudeWitness w{bound->hi()};
          ensure_sound(check_magnitude(w, *bound, value ? &*value : nullptr), m, n);
          point.certificate = w;
        } else if (value) {
          point.certificate = certify_exact_value(*value, options.trial_division_limit);
          if (const auto* pw = std::get_if<PrimeWitness>(&point.certificate)) {
            ensure_sound(check_prime_witness(*pw), m, n);
            point.remark_prime = is_remark_prime(pw->p);
          }
        } else {
          point.certificate = Inconclusive{"no certificate strategy applies at this point"};
        }
        visitor(point);

        const auto step = static_cast<unsigned long>(2ULL * m + n);
        if (value) *value *= Integer(step);
        rising *= step;
      }
    };

    const std::size_t count = n_range.size();
    if (threads <= 1) {
      work(n_range.lo, n_range.hi);
      continue;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t) {
      const auto lo = static_cast<unsigned>(n_range.lo + count * t / threads);
      const auto hi = static_cast<unsigned>(n_range.lo + count * (t + 1) / threads - 1);
      if (hi < lo) continue;
      pool.emplace_back([&, lo, hi] {
        try {
          work(lo, hi);
        } catch (...) {
          std::lock_guard g(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
}

std::vector<ScanPoint> scan(Range m_range, Range n_range, const CertifyOptions& options, const BernoulliTable& table,
                            unsigned threads) {
  std::vector<ScanPoint> out(m_range.size() * n_range.size());
  scan_visit(
      m_range, n_range, options, table,
      [&](const ScanPoint& p) { out[(p.m - m_range.lo) * n_range.size() + (p.n - n_range.lo)] = p; }, threads);
  return out;
}

MonotoneReport monotone_decrease_check(unsigned n, Range m_range, const BernoulliTable& table) {
  if (m_range.size() == 0) throw usage_error("monotonicity range must be nonempty");
  MonotoneReport report;
  report.n = n;
  report.m = m_range;
  report.all_below_one = true;
  Rational previous;
  for (unsigned m = m_range.lo; m <= m_range.hi; ++m) {
    Rational value = e_mn(EmnQuery(m, n), table);
    if (!(value < Rational(1))) report.all_below_one = false;
    if (m > m_range.lo && !(value < previous)) report.increasing_steps.push_back(m - 1);
    previous = std::move(value);
  }
  report.strictly_decreasing = report.increasing_steps.empty();
  return report;
}

}  // namespace torelli_euler
