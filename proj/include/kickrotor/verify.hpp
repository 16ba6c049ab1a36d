// Self-check suite: module invariants and the acceptance criteria, each
// reported as one PASS / FAIL / SKIP line. INFO lines carry diagnostics and
// never affect the verdict.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kr {

enum class CheckStatus { pass, fail, skip, info };

struct CheckResult {
  std::string id;
  std::string title;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct VerifyOptions {
  int l_max = 150;
  int quad_order = 0;  // 0 = automatic
};

/// Below this truncation the interior windows used by the spectral checks are
/// too small; those checks report SKIP.
inline constexpr int kMinTruncationForSpectralChecks = 60;

std::vector<CheckResult> acceptance_checks(const VerifyOptions& opts);
std::vector<CheckResult> property_checks(const VerifyOptions& opts);

/// True when nothing reported FAIL.
bool all_passed(const std::vector<CheckResult>& results);

const char* to_string(CheckStatus status);
void print_results(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace kr
