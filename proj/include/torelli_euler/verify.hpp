#pragma once

#include <filesystem>
#include <optional>

#include "torelli_euler/report.hpp"

namespace torelli_euler {

struct SuiteOptions {
  SuiteMode mode = SuiteMode::standard;
  // Bernoulli cache to load (validated) or create; empty = build in memory.
  std::optional<std::filesystem::path> cache;
  unsigned threads = 0;
};

// Runs every reproducible arithmetic claim and returns one check per claim.
// A failing check never stops the suite; a corrupt cache is reported as the
// failing `table-validation` check and the remaining checks run on a freshly
// built table.
VerificationReport run_verification_suite(const SuiteOptions& options);

// Grid used by the remark scan: m in [6, 200] (deep: [6, 1470]), n in [1, 677].
Range remark_m_range(SuiteMode mode);
inline constexpr Range remark_n_range{1, 677};

}  // namespace torelli_euler
