#pragma once

// Verification suites: each registered case builds its test surfaces, evaluates
// residuals over a grid and reports a verdict. Failures are reports, not throws.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "numeric.hpp"

namespace mannheim {

inline constexpr const char* kSuiteVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct CheckResult {
  std::string name;
  double value = 0.0;  // residual, or a violation count
  double tolerance = 0.0;
  bool pass = false;  // value <= tolerance
  std::optional<double> argmax_s;
};

using ParamValue = std::variant<double, std::string>;

struct CaseReport {
  std::string id;
  bool pass = false;
  double max_residual = 0.0;  // of the check furthest above (or least below) its tolerance
  double tolerance = 0.0;
  std::optional<double> argmax_s;
  std::vector<Interval> excluded;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<CheckResult> checks;
  std::string reason;  // empty on pass
};

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  bool parallel = true;
};

/// The closed registry, in suite order.
const std::vector<std::string>& case_ids();

/// Registry id for an id or alias ("frame-5", "thm-5.1-i", ...); nullopt if unknown.
std::optional<std::string> canonical_case_id(std::string_view id);

CaseReport run_case(std::string_view id, const SuiteOptions& opts = {});

/// All cases, or the filtered ones in registry order. Unknown ids throw
/// InvalidArgument before any case runs.
std::vector<CaseReport> run_suite(const std::vector<std::string>& filter = {}, const SuiteOptions& opts = {});

}  // namespace mannheim
