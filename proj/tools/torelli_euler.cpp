// torelli-euler: exact zeta values, Bernoulli numbers, orbifold Euler
// characteristics and non-integrality certificates for e(m,n).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "torelli_euler/bernoulli.hpp"
#include "torelli_euler/certify.hpp"
#include "torelli_euler/errors.hpp"
#include "torelli_euler/euler_char.hpp"
#include "torelli_euler/report.hpp"
#include "torelli_euler/verify.hpp"
#include "torelli_euler/zeta.hpp"

namespace te = torelli_euler;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string cache;
  std::string format = "text";
  unsigned digits = 20;
  unsigned threads = 0;

  [[nodiscard]] bool json_output() const { return format == "json"; }

  [[nodiscard]] std::optional<std::filesystem::path> cache_path() const {
    if (!cache.empty()) return std::filesystem::path(cache);
    if (const char* env = std::getenv("TORELLI_EULER_CACHE"); env != nullptr && *env != '\0') {
      return std::filesystem::path(env);
    }
    return std::nullopt;
  }

  [[nodiscard]] te::BernoulliTable table(std::size_t max_index) const {
    if (auto path = cache_path()) return te::load_or_build(*path, max_index);
    return te::bernoulli_seidel(max_index);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--cache", c.cache, "Bernoulli cache file (default: $TORELLI_EULER_CACHE)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--digits", c.digits, "Decimal places shown (truncated)")->check(CLI::PositiveNumber);
}

json interval_json(const te::RationalInterval& x) { return json{{"lo", te::to_json(x.lo())}, {"hi", te::to_json(x.hi())}}; }

void print(const Common& c, const json& j, const std::string& text) {
  if (c.json_output()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text << '\n';
  }
}

int cmd_bernoulli(const Common& c, unsigned max_k, const std::string& algorithm) {
  const std::size_t max_index = 2 * static_cast<std::size_t>(max_k);
  std::optional<te::BernoulliTable> primary;
  std::optional<bool> agree;
  if (algorithm == "akiyama-tanigawa") {
    primary = te::bernoulli_akiyama_tanigawa(max_index);
    if (auto path = c.cache_path(); path && !std::filesystem::exists(*path)) te::persist_table(*primary, *path);
  } else {
    primary = c.table(max_index);
    if (algorithm == "both") {
      const auto other = te::bernoulli_akiyama_tanigawa(max_index);
      agree = true;
      for (std::size_t n = 0; n <= max_index; ++n) agree = *agree && (*primary)[n] == other[n];
    }
  }

  json values = json::array();
  std::string text;
  for (std::size_t n = 0; n <= max_index; ++n) {
    if (n >= 3 && n % 2 == 1) continue;
    values.push_back({{"n", n}, {"value", te::to_json((*primary)[n])}});
    text += "B_" + std::to_string(n) + " = " + te::render_text((*primary)[n], c.digits) + "\n";
  }
  json j{{"max_index", max_index},
         {"convention", std::string(te::BernoulliTable::convention)},
         {"algorithm", std::string(te::to_string(primary->algorithm()))},
         {"values", values}};
  if (agree) {
    j["agree"] = *agree;
    text += std::string("seidel and akiyama-tanigawa ") + (*agree ? "agree" : "DISAGREE") + "\n";
  }
  if (!text.empty()) text.pop_back();
  print(c, j, text);
  return (agree && !*agree) ? kExitFailed : kExitOk;
}

int cmd_zeta(const Common& c, unsigned k) {
  const auto table = c.table(2 * static_cast<std::size_t>(k));
  const auto z = te::zeta_one_minus_2k(k, table);
  print(c, json{{"k", k}, {"value", te::to_json(z.value)}},
        "zeta(" + std::to_string(1 - 2 * static_cast<long>(k)) + ") = " + te::render_text(z.value, c.digits));
  return kExitOk;
}

int cmd_chi(const Common& c, const std::string& space, unsigned g, unsigned n) {
  const auto kind = te::parse_space_kind(space);
  if (kind == te::SpaceKind::siegel_quotient && n != 0) throw te::usage_error("-n is not allowed for --space siegel");
  const auto table = c.table(2 * static_cast<std::size_t>(g));
  te::EulerChar ec = kind == te::SpaceKind::siegel_quotient ? te::euler_siegel_quotient(g, table)
                     : kind == te::SpaceKind::moduli        ? te::euler_moduli(g, n, table)
                                                             : te::chi_torelli(g, n, table);
  json j{{"space", space}, {"g", g}, {"n", ec.space.marked_points()}, {"value", te::to_json(ec.value)}};
  std::string text = space + "(g=" + std::to_string(g) + ", n=" + std::to_string(ec.space.marked_points()) +
                     ") = " + te::render_text(ec.value, c.digits);
  if (kind == te::SpaceKind::torelli) {
    j["note"] = "formula value under the finiteness hypothesis";
    text += "  (formula value under the finiteness hypothesis)";
  }
  print(c, j, text);
  return kExitOk;
}

int cmd_emn(const Common& c, unsigned m, unsigned n) {
  const te::EmnQuery q(m, n);
  const auto table = c.table(2 * static_cast<std::size_t>(m));
  const auto value = te::e_mn(q, table);
  print(c, json{{"m", m}, {"n", n}, {"value", te::to_json(value)}},
        "e(" + std::to_string(m) + "," + std::to_string(n) + ") = " + te::render_text(value, c.digits));
  return kExitOk;
}

te::CertifyOptions certify_options(const std::string& strategy, unsigned exact_limit, unsigned precision) {
  te::CertifyOptions o;
  o.strategy = te::parse_strategy(strategy);
  o.exact_limit = exact_limit;
  o.precision = precision;
  return o;
}

std::size_t table_need(const te::CertifyOptions& o, unsigned m_max) {
  if (o.strategy == te::Strategy::bound) return 0;
  if (o.strategy == te::Strategy::automatic) return 2 * static_cast<std::size_t>(std::min(m_max, o.exact_limit));
  return 2 * static_cast<std::size_t>(m_max);
}

int cmd_certify(const Common& c, unsigned m, unsigned n, const te::CertifyOptions& o) {
  const te::EmnQuery q(m, n);
  const auto table = c.table(table_need(o, m));
  const auto cert = te::certify_non_integrality(m, n, o, table);
  print(c, json{{"m", m}, {"n", n}, {"strategy", std::string(te::to_string(o.strategy))}, {"certificate", te::to_json(cert)}},
        "e(" + std::to_string(m) + "," + std::to_string(n) + "): " + te::render_text(cert, c.digits));
  return te::is_inconclusive(cert) ? kExitFailed : kExitOk;
}

int cmd_threshold(const Common& c, unsigned n, unsigned m_cap, unsigned precision) {
  const auto r = te::threshold_for_n(n, m_cap, precision);
  json chain = json::array();
  std::string text;
  if (r.m0) {
    text = "m0 = " + std::to_string(*r.m0) + " for n = " + std::to_string(n) +
           ": U(m,n) < 1 and U(m+1,n)/U(m,n) < 1 certified for " + std::to_string(*r.m0) + " <= m <= " +
           std::to_string(m_cap);
    for (const auto& b : r.chain) {
      chain.push_back({{"m", b.m}, {"value", interval_json(b.value)}, {"ratio_next", interval_json(b.ratio_next)}});
    }
    const auto& first = r.chain.front();
    text += "\nU(" + std::to_string(first.m) + "," + std::to_string(n) + ") <= " +
            te::truncated_decimal(first.value.hi(), c.digits).text + "…";
  } else {
    text = "not found below cap m = " + std::to_string(m_cap) + " for n = " + std::to_string(n);
  }
  json j{{"n", n}, {"m_cap", m_cap}, {"found", r.m0.has_value()}, {"m0", r.m0 ? json(*r.m0) : json(nullptr)},
         {"chain", chain}};
  print(c, j, text);
  return r.m0 ? kExitOk : kExitFailed;
}

struct ScanRow {
  std::string kind;
  std::string p;
  long valuation = 0;
  bool remark_prime = false;
  std::string detail;
};

int cmd_scan(const Common& c, te::Range m, te::Range n, const te::CertifyOptions& o) {
  if (m.size() == 0 || n.size() == 0) throw te::usage_error("scan ranges must be nonempty (min <= max)");
  const auto table = c.table(table_need(o, m.hi));
  std::map<std::pair<unsigned, unsigned>, ScanRow> rows;
  std::mutex mutex;
  te::scan_visit(
      m, n, o, table,
      [&](const te::ScanPoint& p) {
        ScanRow row{std::string(te::kind_name(p.certificate)), "", 0, p.remark_prime, ""};
        if (const auto* pw = std::get_if<te::PrimeWitness>(&p.certificate)) {
          row.p = pw->p.get_str();
          row.valuation = pw->valuation;
        } else if (const auto* iv = std::get_if<te::IntegerValue>(&p.certificate)) {
          row.detail = iv->value.get_str();
        } else if (const auto* mw = std::get_if<te::MagnitudeWitness>(&p.certificate)) {
          row.detail = te::truncated_decimal(mw->upper, c.digits).text;
        } else {
          row.detail = std::get<te::Inconclusive>(p.certificate).reason;
        }
        std::lock_guard g(mutex);
        rows.emplace(std::make_pair(p.m, p.n), std::move(row));
      },
      c.threads);

  std::size_t inconclusive = 0;
  std::size_t non_integer = 0;
  std::size_t integer = 0;
  json points = json::array();
  std::string text;
  for (const auto& [mn, row] : rows) {
    if (row.kind == "inconclusive") ++inconclusive;
    if (row.kind == "integer") ++integer;
    if (row.kind == "prime-witness" || row.kind == "magnitude") ++non_integer;
    json pj{{"m", mn.first}, {"n", mn.second}, {"kind", row.kind}};
    std::string line = std::to_string(mn.first) + " " + std::to_string(mn.second) + " " + row.kind;
    if (row.kind == "prime-witness") {
      pj["p"] = row.p;
      pj["valuation"] = row.valuation;
      pj["remark_prime"] = row.remark_prime;
      line += " p=" + row.p + " v=" + std::to_string(row.valuation);
    } else if (row.kind == "integer") {
      pj["value"] = row.detail;
      line += " value=" + row.detail;
    } else if (row.kind == "magnitude") {
      pj["upper"] = row.detail;
      line += " upper<=" + row.detail + "…";
    } else {
      pj["reason"] = row.detail;
      line += " " + row.detail;
    }
    points.push_back(pj);
    text += line + "\n";
  }
  text += "summary: " + std::to_string(non_integer) + " non-integer, " + std::to_string(integer) + " integer, " +
          std::to_string(inconclusive) + " inconclusive";
  print(c,
        json{{"points", points},
             {"summary", {{"non_integer", non_integer}, {"integer", integer}, {"inconclusive", inconclusive}}}},
        text);
  return inconclusive == 0 ? kExitOk : kExitFailed;
}

int cmd_verify(const Common& c, bool deep) {
  te::SuiteOptions o;
  o.mode = deep ? te::SuiteMode::deep : te::SuiteMode::standard;
  o.cache = c.cache_path();
  o.threads = c.threads;
  const auto report = te::run_verification_suite(o);
  if (c.json_output()) {
    std::cout << te::to_json(report).dump(2) << '\n';
  } else {
    std::cout << te::render_text(report);
  }
  return te::exit_status(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact zeta values, Bernoulli numbers, Euler characteristics and e(m,n) certificates"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads for scans (0 = hardware)");

  unsigned max_k = 0;
  std::string algorithm = "seidel";
  auto* bern = app.add_subcommand("bernoulli", "Exact B_0..B_2K");
  bern->add_option("--max-k", max_k, "Largest k of B_2k")->required();
  bern->add_option("--algorithm", algorithm)->check(CLI::IsMember({"seidel", "akiyama-tanigawa", "both"}));
  add_common(bern, common);

  unsigned k = 0;
  auto* zeta = app.add_subcommand("zeta", "zeta(1-2K), exact");
  zeta->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  add_common(zeta, common);

  std::string space;
  unsigned g = 0;
  unsigned n = 0;
  auto* chi = app.add_subcommand("chi", "Orbifold Euler characteristics");
  chi->add_option("--space", space)->required()->check(CLI::IsMember({"siegel", "moduli", "torelli"}));
  chi->add_option("-g", g, "Genus (>= 2)")->required();
  chi->add_option("-n", n, "Marked points");
  add_common(chi, common);

  unsigned m = 0;
  auto* emn = app.add_subcommand("emn", "e(m,n), exact");
  emn->add_option("-m", m)->required();
  emn->add_option("-n", n)->required();
  add_common(emn, common);

  std::string strategy = "auto";
  unsigned exact_limit = te::standard_exact_limit;
  unsigned precision = 128;
  auto* certify = app.add_subcommand("certify", "Non-integrality certificate for e(m,n)");
  certify->add_option("-m", m)->required();
  certify->add_option("-n", n)->required();
  certify->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "exact", "bound"}));
  certify->add_option("--exact-limit", exact_limit, "Largest m that auto may evaluate exactly");
  certify->add_option("--precision", precision, "Bits for pi in the bound")->check(CLI::Range(8U, 1U << 16));
  add_common(certify, common);

  unsigned m_cap = 200;
  auto* threshold = app.add_subcommand("threshold", "Smallest m0 with the bound below 1 and decreasing");
  threshold->add_option("-n", n)->required();
  threshold->add_option("--m-cap", m_cap);
  threshold->add_option("--precision", precision)->check(CLI::Range(8U, 1U << 16));
  add_common(threshold, common);

  te::Range m_range;
  te::Range n_range;
  std::string scan_strategy = "auto";
  auto* scan = app.add_subcommand("scan", "Certificates over an (m,n) grid");
  scan->add_option("--m-min", m_range.lo)->required();
  scan->add_option("--m-max", m_range.hi)->required();
  scan->add_option("--n-min", n_range.lo)->required();
  scan->add_option("--n-max", n_range.hi)->required();
  scan->add_option("--strategy", scan_strategy)->check(CLI::IsMember({"auto", "exact", "bound"}));
  scan->add_option("--exact-limit", exact_limit);
  scan->add_option("--precision", precision)->check(CLI::Range(8U, 1U << 16));
  add_common(scan, common);

  bool deep = false;
  auto* verify = app.add_subcommand("verify-paper", "Run every reproducible arithmetic claim");
  verify->add_flag("--deep", deep, "Extend the remark scan to m <= 1470 (needs B_2940)");
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bern) return cmd_bernoulli(common, max_k, algorithm);
    if (*zeta) return cmd_zeta(common, k);
    if (*chi) return cmd_chi(common, space, g, n);
    if (*emn) return cmd_emn(common, m, n);
    if (*certify) return cmd_certify(common, m, n, certify_options(strategy, exact_limit, precision));
    if (*threshold) return cmd_threshold(common, n, m_cap, precision);
    if (*scan) return cmd_scan(common, m_range, n_range, certify_options(scan_strategy, exact_limit, precision));
    if (*verify) return cmd_verify(common, deep);
  } catch (const te::usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const te::cache_error& e) {
    std::cerr << "cache error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
