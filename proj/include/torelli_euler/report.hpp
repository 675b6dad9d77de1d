#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "torelli_euler/certify.hpp"
#include "torelli_euler/rational.hpp"

namespace torelli_euler {

enum class CheckStatus { pass, fail, inconclusive };
enum class SuiteMode { standard, deep };

std::string_view to_string(CheckStatus s);
std::string_view to_string(SuiteMode m);
CheckStatus parse_check_status(std::string_view tag);
SuiteMode parse_suite_mode(std::string_view tag);

struct Check {
  std::string id;
  std::string paper_ref;  // short label of the claim being reproduced
  CheckStatus status = CheckStatus::fail;
  std::string witness;    // rendered value, certificate, or offending values
  friend bool operator==(const Check&, const Check&) = default;
};

struct StatusCounts {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  friend bool operator==(const StatusCounts&, const StatusCounts&) = default;
};

class VerificationReport {
 public:
  explicit VerificationReport(SuiteMode mode = SuiteMode::standard) : mode_(mode) {}

  // Throws usage_error on a duplicate id.
  void add(Check check);

  [[nodiscard]] SuiteMode mode() const { return mode_; }
  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
  [[nodiscard]] StatusCounts summary() const;
  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const Check* find(std::string_view id) const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;

 private:
  SuiteMode mode_;
  std::vector<Check> checks_;
};

// 0 when every check passed, 1 otherwise.
int exit_status(const VerificationReport& report);

// --- text ---------------------------------------------------------------

// "12" for integers; otherwise "num/den ≈ d.ddd…" with `digits` places
// after the point, truncated toward zero, "…" marking a cut expansion.
std::string render_text(const Rational& value, unsigned digits = 20);
std::string render_text(const IntegralityCertificate& c, unsigned digits = 20);
std::string render_text(const VerificationReport& report);

// --- json ---------------------------------------------------------------
// Rationals are {"num": "...", "den": "..."}; all big numbers are decimal
// strings. from_json throws usage_error on schema violations.

nlohmann::json to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IntegralityCertificate& c);
IntegralityCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

}  // namespace torelli_euler
