#pragma once

#include <stdexcept>
#include <string>

namespace torelli_euler {

// Caller violated a precondition (bad argument combination, out-of-range
// index). The CLI maps this to exit status 2.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A table or resource is too small for the requested computation.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by an interval containing zero, valuation of zero, etc.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Failure while reading or writing a Bernoulli cache file.
class cache_error : public std::runtime_error {
 public:
  enum class kind { missing_file, malformed, version_mismatch, invariant_violation, io };

  cache_error(kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}

  [[nodiscard]] kind error_kind() const noexcept { return kind_; }

 private:
  kind kind_;
};

}  // namespace torelli_euler
