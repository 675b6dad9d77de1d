#include "torelli_euler/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "torelli_euler/errors.hpp"

namespace torelli_euler {

using nlohmann::json;

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(SuiteMode m) { return m == SuiteMode::deep ? "deep" : "standard"; }

CheckStatus parse_check_status(std::string_view tag) {
  if (tag == "pass") return CheckStatus::pass;
  if (tag == "fail") return CheckStatus::fail;
  if (tag == "inconclusive") return CheckStatus::inconclusive;
  throw usage_error("unknown check status '" + std::string(tag) + "'");
}

SuiteMode parse_suite_mode(std::string_view tag) {
  if (tag == "standard") return SuiteMode::standard;
  if (tag == "deep") return SuiteMode::deep;
  throw usage_error("unknown suite mode '" + std::string(tag) + "'");
}

void VerificationReport::add(Check check) {
  if (find(check.id) != nullptr) throw usage_error("duplicate check id '" + check.id + "'");
  checks_.push_back(std::move(check));
}

StatusCounts VerificationReport::summary() const {
  StatusCounts c;
  for (const auto& check : checks_) {
    switch (check.status) {
      case CheckStatus::pass:
        ++c.pass;
        break;
      case CheckStatus::fail:
        ++c.fail;
        break;
      case CheckStatus::inconclusive:
        ++c.inconclusive;
        break;
    }
  }
  return c;
}

bool VerificationReport::all_pass() const {
  const auto c = summary();
  return c.fail == 0 && c.inconclusive == 0;
}

const Check* VerificationReport::find(std::string_view id) const {
  for (const auto& c : checks_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

int exit_status(const VerificationReport& report) { return report.all_pass() ? 0 : 1; }

std::string render_text(const Rational& value, unsigned digits) {
  if (value.is_integer()) return value.str();
  const DecimalExpansion d = truncated_decimal(value, std::max(digits, 1U));
  return value.str() + " ≈ " + d.text + (d.exact ? "" : "…");
}

std::string render_text(const IntegralityCertificate& c, unsigned digits) {
  std::ostringstream os;
  if (const auto* iv = std::get_if<IntegerValue>(&c)) {
    os << "integer: " << iv->value.get_str();
  } else if (const auto* pw = std::get_if<PrimeWitness>(&c)) {
    os << "not an integer: v_" << pw->p.get_str() << " = " << pw->valuation;
    const auto& v = pw->value;
    // Huge values are summarised by size; the valuation is the certificate.
    if (mpz_sizeinbase(v.numerator().get_mpz_t(), 10) + mpz_sizeinbase(v.denominator().get_mpz_t(), 10) <= 200) {
      os << " (value " << render_text(v, digits) << ")";
    } else {
      os << " (value with " << mpz_sizeinbase(v.numerator().get_mpz_t(), 10) << "-digit numerator, "
         << mpz_sizeinbase(v.denominator().get_mpz_t(), 10) << "-digit denominator)";
    }
  } else if (const auto* mw = std::get_if<MagnitudeWitness>(&c)) {
    os << "not an integer: " << MagnitudeWitness::statement << ", upper bound "
       << truncated_decimal(mw->upper, digits).text << "…";
  } else if (const auto* ic = std::get_if<Inconclusive>(&c)) {
    os << "inconclusive: " << ic->reason;
  }
  return os.str();
}

std::string render_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "verification report (" << to_string(report.mode()) << " mode)\n";
  for (const auto& c : report.checks()) {
    std::string status(to_string(c.status));
    for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "[" << status << "] " << c.id << " (" << c.paper_ref << "): " << c.witness << '\n';
  }
  const auto s = report.summary();
  os << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.inconclusive << " inconclusive\n";
  return os.str();
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw usage_error(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw usage_error(std::string("JSON field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

json to_json(const Rational& value) {
  return json{{"num", value.numerator().get_str()}, {"den", value.denominator().get_str()}};
}

Rational rational_from_json(const json& j) {
  const Integer num = parse_integer(string_field(j, "num"));
  const Integer den = parse_integer(string_field(j, "den"));
  if (den <= 0) throw usage_error("JSON rational needs a positive denominator");
  return Rational(num, den);
}

json to_json(const IntegralityCertificate& c) {
  if (const auto* iv = std::get_if<IntegerValue>(&c)) {
    return json{{"kind", "integer"}, {"value", iv->value.get_str()}};
  }
  if (const auto* pw = std::get_if<PrimeWitness>(&c)) {
    return json{{"kind", "prime-witness"}, {"value", to_json(pw->value)}, {"p", pw->p.get_str()},
                {"valuation", pw->valuation}};
  }
  if (const auto* mw = std::get_if<MagnitudeWitness>(&c)) {
    return json{{"kind", "magnitude"}, {"upper", to_json(mw->upper)},
                {"statement", std::string(MagnitudeWitness::statement)}};
  }
  const auto& ic = std::get<Inconclusive>(c);
  return json{{"kind", "inconclusive"}, {"reason", ic.reason}};
}

IntegralityCertificate certificate_from_json(const json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "integer") return IntegerValue{parse_integer(string_field(j, "value"))};
  if (kind == "prime-witness") {
    const json& v = field(j, "valuation");
    if (!v.is_number_integer()) throw usage_error("prime-witness valuation must be an integer");
    return PrimeWitness{rational_from_json(field(j, "value")), parse_integer(string_field(j, "p")), v.get<long>()};
  }
  if (kind == "magnitude") return MagnitudeWitness{rational_from_json(field(j, "upper"))};
  if (kind == "inconclusive") return Inconclusive{string_field(j, "reason")};
  throw usage_error("unknown certificate kind '" + kind + "'");
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks()) {
    checks.push_back(
        {{"id", c.id}, {"paper_ref", c.paper_ref}, {"status", std::string(to_string(c.status))}, {"witness", c.witness}});
  }
  const auto s = report.summary();
  return json{{"mode", std::string(to_string(report.mode()))},
              {"checks", checks},
              {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"inconclusive", s.inconclusive}}}};
}

VerificationReport report_from_json(const json& j) {
  VerificationReport report(parse_suite_mode(string_field(j, "mode")));
  const json& checks = field(j, "checks");
  if (!checks.is_array()) throw usage_error("report 'checks' must be an array");
  for (const auto& c : checks) {
    report.add(Check{string_field(c, "id"), string_field(c, "paper_ref"),
                     parse_check_status(string_field(c, "status")), string_field(c, "witness")});
  }
  const json& summary = field(j, "summary");
  const auto s = report.summary();
  if (summary.value("pass", s.pass + 1) != s.pass || summary.value("fail", s.fail + 1) != s.fail ||
      summary.value("inconclusive", s.inconclusive + 1) != s.inconclusive) {
    throw usage_error("report summary does not match its checks");
  }
  return report;
}

}  // namespace torelli_euler
