#pragma once

#include <string>
#include <vector>

#include "batlb/instance.hpp"

namespace batlb {

struct Comparison {
  std::string label;
  std::string computed;
  std::string expected;
  bool ok = true;
};

enum class CheckStatus { passed, failed, skipped };

const char* to_string(CheckStatus status) noexcept;

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::passed;
  std::string note;
  std::vector<Comparison> comparisons;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  /// True when nothing failed; skipped checks do not count against it.
  bool all_passed() const;
};

/// Self-contained table and polynomial checks, plus instance-specific moment
/// checks when `inst` is given.
VerificationReport run_verification(const Instance* inst = nullptr);

}  // namespace batlb
