#include "torelli_euler/verify.hpp"

#include <unistd.h>

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <new>
#include <sstream>

#include "torelli_euler/arith.hpp"
#include "torelli_euler/bernoulli.hpp"
#include "torelli_euler/errors.hpp"
#include "torelli_euler/euler_char.hpp"
#include "torelli_euler/zeta.hpp"

namespace torelli_euler {

Range remark_m_range(SuiteMode mode) { return {6, mode == SuiteMode::deep ? deep_exact_limit : standard_exact_limit}; }

namespace {

constexpr CheckStatus pass_if(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

// 40 decimals of pi, truncated; pi lies in [kPiDigits, kPiDigits + 10^-40].
constexpr std::string_view kPiDigits = "31415926535897932384626433832795028841971";

Rational pow10_inverse(unsigned e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return Rational(Integer(1), p);
}

struct Context {
  const SuiteOptions& options;
  const BernoulliTable& table;
};

using CheckFn = std::function<Check(const Context&)>;

Check bernoulli_numerators(const Context& ctx) {
  const auto& b12 = ctx.table.even(6);
  const auto& b16 = ctx.table.even(8);
  const bool ok = ::abs(b12.numerator()) == 691 && ::abs(b16.numerator()) == 3617;
  return {"bernoulli-numerators-691-3617", "primes 691 and 3617 as numerators of B_12 and B_16", pass_if(ok),
          "B_12 = " + b12.str() + ", B_16 = " + b16.str()};
}

Check bernoulli_agreement(const Context&) {
  const BernoulliTable seidel = bernoulli_seidel(600);
  const BernoulliTable at = bernoulli_akiyama_tanigawa(600);
  for (std::size_t n = 0; n <= 600; ++n) {
    if (seidel[n] != at[n]) {
      return {"bernoulli-agreement-600", "B_n via z/(e^z-1), two algorithms", CheckStatus::fail,
              "B_" + std::to_string(n) + ": seidel " + seidel[n].str() + " vs akiyama-tanigawa " + at[n].str()};
    }
  }
  return {"bernoulli-agreement-600", "B_n via z/(e^z-1), two algorithms", CheckStatus::pass,
          "seidel and akiyama-tanigawa agree on B_0..B_600"};
}

Check vsc_denominators(const Context& ctx) {
  for (std::size_t k = 1; k <= 300; ++k) {
    const Integer expected = von_staudt_clausen_denominator(k);
    if (ctx.table.even(k).denominator() != expected) {
      return {"vsc-denominator-300", "von Staudt denominator law", CheckStatus::fail,
              "B_" + std::to_string(2 * k) + " = " + ctx.table.even(k).str() + ", expected denominator " +
                  expected.get_str()};
    }
  }
  return {"vsc-denominator-300", "von Staudt denominator law", CheckStatus::pass,
          "denominator(B_2k) = prod of primes p with (p-1) | 2k for k = 1..300"};
}

Check vsc_integrality(const Context& ctx) {
  for (std::size_t k = 1; k <= 300; ++k) {
    Rational sum = ctx.table.even(k);
    for (unsigned long p : von_staudt_clausen_primes(k)) sum += Rational(Integer(1), Integer(p));
    if (!sum.is_integer()) {
      return {"vsc-integrality-300", "von Staudt-Clausen congruence", CheckStatus::fail,
              "B_" + std::to_string(2 * k) + " + sum 1/p = " + sum.str()};
    }
  }
  return {"vsc-integrality-300", "von Staudt-Clausen congruence", CheckStatus::pass,
          "B_2k + sum_{(p-1)|2k} 1/p is an integer for k = 1..300"};
}

Check zeta_sign_and_bound(const Context& ctx) {
  for (std::size_t k = 1; k <= 100; ++k) {
    const ZetaValue z = zeta_one_minus_2k(k, ctx.table);
    const int expected = (k % 2 == 0) ? 1 : -1;
    if (z.value.sign() != expected) {
      return {"zeta-sign-bound-100", "zeta(1-2k) sign and lower bound", CheckStatus::fail,
              "zeta(" + std::to_string(1 - 2 * static_cast<long>(k)) + ") = " + z.value.str() + " has the wrong sign"};
    }
    const RationalInterval lower = zeta_abs_lower_bound(k, 64);
    if (!(z.value.abs() > lower.hi())) {
      return {"zeta-sign-bound-100", "zeta(1-2k) sign and lower bound", CheckStatus::fail,
              "|zeta(1-2k)| <= certified 2(2k-1)!/(2pi)^2k at k=" + std::to_string(k)};
    }
  }
  return {"zeta-sign-bound-100", "zeta(1-2k) sign and lower bound", CheckStatus::pass,
          "sign (-1)^k and |zeta(1-2k)| > 2(2k-1)!/(2pi)^2k for k = 1..100"};
}

Check zeta_product_14(const Context& ctx) {
  const Rational product = siegel_quotient_value(14, ctx.table);
  const std::string rounded = rounded_decimal(product, 2);
  const auto truncated = truncated_decimal(product, 12);
  return {"zeta-product-14", "computer evaluation of prod_{k=1}^{14} zeta(1-2k)", pass_if(rounded == "-297203.11"),
          "exact " + product.str() + "; truncated " + truncated.text + "…; rounded to 2 places " + rounded};
}

Check euler_spot_values(const Context& ctx) {
  const Rational moduli2 = euler_moduli(2, 0, ctx.table).value;
  const Rational torelli2 = chi_torelli(2, 0, ctx.table).value;
  const Rational torelli3 = chi_torelli(3, 0, ctx.table).value;
  const bool ok = moduli2 == Rational(Integer(-1), Integer(240)) && torelli2 == Rational(6) && torelli3 == Rational(360);
  return {"euler-spot-values", "Harer-Zagier and Torelli closed forms", pass_if(ok),
          "e(M_2) = " + moduli2.str() + ", chi_Q(T_2) = " + torelli2.str() + ", chi_Q(T_3) = " + torelli3.str() +
              " (formula values under the finiteness hypothesis)"};
}

Check product_formula(const Context& ctx) {
  for (unsigned g = 2; g <= 30; ++g) {
    for (unsigned n = 0; n <= 10; ++n) {
      const auto c = check_product_formula(g, n, ctx.table);
      if (!c.holds) {
        return {"product-formula-30x10", "e(M_g^n) = chi_Q(T_g^n) e(Sp(2g,Z)\\S_g)", CheckStatus::fail,
                "g=" + std::to_string(g) + ", n=" + std::to_string(n) + ": " + c.moduli.str() + " != " +
                    c.torelli.str() + " * " + c.siegel.str()};
      }
    }
  }
  return {"product-formula-30x10", "e(M_g^n) = chi_Q(T_g^n) e(Sp(2g,Z)\\S_g)", CheckStatus::pass,
          "exact equality for 2 <= g <= 30, 0 <= n <= 10"};
}

Check direct_6_13(const Context& ctx) {
  CertifyOptions opts;
  opts.strategy = Strategy::exact;
  std::ostringstream witness;
  bool ok = true;
  for (unsigned m = 6; m <= 13; ++m) {
    const auto cert = certify_non_integrality(m, 1, opts, ctx.table);
    ok = ok && certifies_non_integer(cert);
    witness << (m > 6 ? "; " : "") << "m=" << m << ": ";
    if (const auto* pw = std::get_if<PrimeWitness>(&cert)) {
      witness << "v_" << pw->p.get_str() << " = " << pw->valuation;
    } else {
      witness << kind_name(cert);
    }
  }
  return {"direct-6-13", "e(m,1) not an integer for 6 <= m <= 13 by direct calculation", pass_if(ok), witness.str()};
}

Check integer_points(const Context& ctx) {
  CertifyOptions opts;
  opts.strategy = Strategy::exact;
  const auto c1 = certify_non_integrality(1, 1, opts, ctx.table);
  const auto c2 = certify_non_integrality(2, 1, opts, ctx.table);
  const auto* i1 = std::get_if<IntegerValue>(&c1);
  const auto* i2 = std::get_if<IntegerValue>(&c2);
  const bool ok = i1 != nullptr && i2 != nullptr && i1->value == 12 && i2->value == 1440;
  return {"integer-m1-m2", "e(1,1) and e(2,1) are integers", pass_if(ok),
          "e(1,1): " + render_text(c1) + "; e(2,1): " + render_text(c2)};
}

Check magnitude_tail(const Context& ctx) {
  for (unsigned m = 14; m <= 100; ++m) {
    const Rational e = e_mn(EmnQuery(m, 1), ctx.table);
    if (!(e < Rational(1))) {
      return {"magnitude-tail-14-100", "e(m,1) < 1 for m >= 14", CheckStatus::fail,
              "e(" + std::to_string(m) + ",1) = " + render_text(e, 6)};
    }
  }
  return {"magnitude-tail-14-100", "e(m,1) < 1 for m >= 14", CheckStatus::pass,
          "exact e(m,1) < 1 for 14 <= m <= 100"};
}

Check monotone_tail(const Context& ctx) {
  const MonotoneReport r = monotone_decrease_check(1, {9, 100}, ctx.table);
  std::string witness = "e(m+1,1) < e(m,1) exactly for 9 <= m < 100";
  if (!r.strictly_decreasing) {
    witness = "increasing at m =";
    for (unsigned m : r.increasing_steps) witness += " " + std::to_string(m);
  }
  return {"monotone-9-100", "e(m,1) strictly decreasing for m >= 9", pass_if(r.strictly_decreasing), witness};
}

Check single_terms(const Context&) {
  const RationalInterval pi = pi_interval(128);
  const Rational one(1);
  std::string bad;
  for (std::size_t k = 1; k <= 100; ++k) {
    const RationalInterval t = single_term_bound(k, pi);
    const bool ok = k <= 8 ? t.lo() > one : t.hi() < one;
    if (!ok && bad.empty()) bad = "k=" + std::to_string(k) + " not certified on the expected side of 1";
  }
  return {"single-term-threshold-9", "(2pi)^2k / (2 (2k-1)!) < 1 for k >= 9", pass_if(bad.empty()),
          bad.empty() ? "certified > 1 for k = 1..8 and < 1 for k = 9..100" : bad};
}

Check threshold_n1(const Context&) {
  const ThresholdResult r = threshold_for_n(1, standard_exact_limit);
  const bool ok = r.m0 && *r.m0 == 14;
  return {"threshold-n1", "U(m,1) below 1 and decreasing from m = 14", pass_if(ok),
          r.m0 ? "m0 = " + std::to_string(*r.m0) + " (ratio chain certified to m = " + std::to_string(r.m_cap) + ")"
               : "not found below cap " + std::to_string(r.m_cap)};
}

Check bound_soundness(const Context& ctx) {
  for (unsigned n = 1; n <= 5; ++n) {
    const auto chain = bound_chain(n, 50);
    for (unsigned m = 1; m <= 50; ++m) {
      const Rational e = e_mn(EmnQuery(m, n), ctx.table);
      if (!(e <= chain[m - 1].value.hi())) {
        return {"bound-soundness-50x5", "e(m,n) < (2m+n-1)!/(2m)! prod (2pi)^2k/(2(2k-1)!)", CheckStatus::fail,
                "e(" + std::to_string(m) + "," + std::to_string(n) + ") = " + render_text(e, 6) + " exceeds U.hi"};
      }
    }
  }
  return {"bound-soundness-50x5", "e(m,n) < (2m+n-1)!/(2m)! prod (2pi)^2k/(2(2k-1)!)", CheckStatus::pass,
          "exact e(m,n) <= U(m,n).hi for 1 <= m <= 50, 1 <= n <= 5"};
}

struct RemarkTally {
  std::atomic<std::size_t> points{0};
  std::atomic<std::size_t> non_integer{0};
  std::atomic<std::size_t> by_691{0};
  std::atomic<std::size_t> by_3617{0};
  std::mutex mutex;
  std::map<std::pair<unsigned, unsigned>, std::string> exceptions;  // first few, keyed for determinism
};

std::vector<Check> remark_checks(const Context& ctx) {
  const Range m = remark_m_range(ctx.options.mode);
  const Range n = remark_n_range;
  CertifyOptions opts;
  opts.strategy = Strategy::exact;
  opts.exact_limit = m.hi;
  RemarkTally tally;
  scan_visit(
      m, n, opts, ctx.table,
      [&](const ScanPoint& p) {
        ++tally.points;
        if (certifies_non_integer(p.certificate)) ++tally.non_integer;
        const auto* pw = std::get_if<PrimeWitness>(&p.certificate);
        if (pw != nullptr && pw->p == 691) ++tally.by_691;
        if (pw != nullptr && pw->p == 3617) ++tally.by_3617;
        if (!p.remark_prime) {
          std::lock_guard g(tally.mutex);
          if (tally.exceptions.size() < 10) tally.exceptions[{p.m, p.n}] = std::string(kind_name(p.certificate));
        }
      },
      ctx.options.threads);

  const std::string grid = std::to_string(m.lo) + " <= m <= " + std::to_string(m.hi) + ", 1 <= n <= 677";
  std::vector<Check> out;
  out.push_back({"remark-scan", "e(m,n) not an integer for n < 678 and m >= 6", pass_if(tally.non_integer == tally.points),
                 std::to_string(tally.non_integer.load()) + " of " + std::to_string(tally.points.load()) +
                     " points certified non-integer over " + grid});

  const std::size_t witnessed = tally.by_691 + tally.by_3617;
  std::string witness = std::to_string(witnessed) + "/" + std::to_string(tally.points.load()) +
                        " witnessed by p in {691, 3617} (691: " + std::to_string(tally.by_691.load()) +
                        ", 3617: " + std::to_string(tally.by_3617.load()) + ")";
  if (!tally.exceptions.empty()) {
    witness += "; exceptions:";
    for (const auto& [mn, kind] : tally.exceptions) {
      witness += " (" + std::to_string(mn.first) + "," + std::to_string(mn.second) + ")=" + kind;
    }
  }
  // Informational: exceptions are reported, not failed.
  out.push_back({"remark-witness-primes", "von Staudt applied to 691 and 3617", CheckStatus::pass, witness});
  return out;
}

Check remark_closing_bound(const Context& ctx) {
  const Range m = remark_m_range(ctx.options.mode);
  const Rational one(1);
  std::optional<unsigned> literal_first;
  for (unsigned mm = 1; mm <= 60 && !literal_first; ++mm) {
    if (remark_literal_bound(mm, 677).hi() < one) literal_first = mm;
  }
  const ThresholdResult corrected = threshold_for_n(677, m.hi);
  const bool covered = corrected.m0 && *corrected.m0 <= m.hi + 1;
  std::string witness = "literal printed form first < 1 at m = " +
                        (literal_first ? std::to_string(*literal_first) : std::string("none <= 60")) +
                        " (n = 677); corrected bound U(m,677) ";
  witness += corrected.m0 ? "below 1 and decreasing from m = " + std::to_string(*corrected.m0) + " to " +
                                std::to_string(m.hi)
                          : "not below 1 up to m = " + std::to_string(m.hi);
  witness += "; exact scan covers m <= " + std::to_string(m.hi);
  return {"remark-closing-bound", "bound for n < 678 and m >= 37", pass_if(covered), witness};
}

Check cache_roundtrip(const Context& ctx) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / ("torelli-euler-roundtrip-" + std::to_string(::getpid()) + ".bern");
  std::vector<Rational> head(ctx.table.values().begin(), ctx.table.values().begin() + 101);
  const BernoulliTable small(std::move(head), ctx.table.algorithm());
  persist_table(small, path);
  const BernoulliTable loaded = load_table(path);
  std::filesystem::remove(path);
  return {"cache-roundtrip", "Bernoulli cache persistence", pass_if(loaded == small),
          "persist/load of B_0..B_100 is the identity with invariants revalidated"};
}

Check json_roundtrip(const Context& ctx) {
  CertifyOptions exact;
  exact.strategy = Strategy::exact;
  CertifyOptions bound;
  bound.strategy = Strategy::bound;
  const std::vector<IntegralityCertificate> certs{
      certify_non_integrality(1, 1, exact, ctx.table), certify_non_integrality(6, 1, exact, ctx.table),
      certify_non_integrality(14, 1, bound, ctx.table), Inconclusive{"example"}};
  bool ok = true;
  for (const auto& c : certs) {
    ok = ok && certificate_from_json(nlohmann::json::parse(to_json(c).dump())) == c;
  }
  VerificationReport sample(SuiteMode::deep);
  sample.add({"a", "ref", CheckStatus::pass, "w"});
  sample.add({"b", "ref", CheckStatus::inconclusive, "\"quoted\" ≈"});
  ok = ok && report_from_json(nlohmann::json::parse(to_json(sample).dump())) == sample;
  return {"json-roundtrip", "certificate and report serialization", pass_if(ok),
          "integer, prime-witness, magnitude, inconclusive certificates and a report survive parse(render(x))"};
}

Check pi_enclosure(const Context&) {
  const RationalInterval pi = pi_interval(128);
  const Rational reference(parse_integer(kPiDigits), pow10_inverse(40).denominator());
  Integer two_120 = 1;
  two_120 <<= 120;
  const bool ok = pi.contains(reference) && pi.width() <= Rational(Integer(1), two_120);
  return {"pi-enclosure-128", "pi enters through (2pi)^2k", pass_if(ok),
          "[" + truncated_decimal(pi.lo(), 45).text + ", " + truncated_decimal(pi.hi(), 45).text + "]"};
}

Check guarded(const std::string& id, const std::string& ref, const CheckFn& fn, const Context& ctx) {
  try {
    return fn(ctx);
  } catch (const capacity_error& e) {
    return {id, ref, CheckStatus::inconclusive, std::string("capacity: ") + e.what()};
  } catch (const std::bad_alloc&) {
    return {id, ref, CheckStatus::inconclusive, "capacity: out of memory"};
  } catch (const std::exception& e) {
    return {id, ref, CheckStatus::fail, std::string("error: ") + e.what()};
  }
}

}  // namespace

VerificationReport run_verification_suite(const SuiteOptions& options) {
  VerificationReport report(options.mode);
  const std::size_t needed = std::max<std::size_t>(600, 2 * remark_m_range(options.mode).hi);

  std::optional<BernoulliTable> table;
  if (options.cache) {
    try {
      table = load_or_build(*options.cache, needed);
      report.add({"table-validation", "Bernoulli table invariants", CheckStatus::pass,
                  "B_0..B_" + std::to_string(table->max_index()) + " from " + options.cache->string() +
                      " passed sign and von Staudt-Clausen validation"});
    } catch (const cache_error& e) {
      report.add({"table-validation", "Bernoulli table invariants", CheckStatus::fail, e.what()});
    }
  }
  if (!table) {
    table = bernoulli_seidel(needed);
    if (!options.cache) {
      report.add({"table-validation", "Bernoulli table invariants", CheckStatus::pass,
                  "B_0..B_" + std::to_string(needed) + " built with the seidel recurrence and validated"});
    }
  }
  const Context ctx{options, *table};

  const std::vector<std::pair<std::string, CheckFn>> checks{
      {"bernoulli-numerators-691-3617", bernoulli_numerators},
      {"bernoulli-agreement-600", bernoulli_agreement},
      {"vsc-denominator-300", vsc_denominators},
      {"vsc-integrality-300", vsc_integrality},
      {"zeta-sign-bound-100", zeta_sign_and_bound},
      {"zeta-product-14", zeta_product_14},
      {"euler-spot-values", euler_spot_values},
      {"product-formula-30x10", product_formula},
      {"direct-6-13", direct_6_13},
      {"integer-m1-m2", integer_points},
      {"magnitude-tail-14-100", magnitude_tail},
      {"monotone-9-100", monotone_tail},
      {"single-term-threshold-9", single_terms},
      {"threshold-n1", threshold_n1},
      {"bound-soundness-50x5", bound_soundness},
  };
  for (const auto& [id, fn] : checks) report.add(guarded(id, "", fn, ctx));

  try {
    for (auto& c : remark_checks(ctx)) report.add(std::move(c));
  } catch (const std::exception& e) {
    report.add({"remark-scan", "e(m,n) not an integer for n < 678 and m >= 6", CheckStatus::inconclusive,
                std::string("scan aborted: ") + e.what()});
  }
  report.add(guarded("remark-closing-bound", "", remark_closing_bound, ctx));
  report.add(guarded("cache-roundtrip", "", cache_roundtrip, ctx));
  report.add(guarded("json-roundtrip", "", json_roundtrip, ctx));
  report.add(guarded("pi-enclosure-128", "", pi_enclosure, ctx));
  return report;
}

}  // namespace torelli_euler
