#pragma once

#include "pcfdyn/config.hpp"

#include <string>
#include <vector>

namespace pcfdyn {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  /// Wall time; kept out of the JSON report so reports are reproducible.
  double seconds = 0;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
};

inline constexpr int kCriterionCount = 15;

/// Runs the acceptance criteria listed in `only` (all when empty).
/// Criterion 15 reruns 1..14 with a different thread count and compares
/// the serialized reports byte for byte.
SelftestReport run_selftest(const RunConfig& cfg, const std::vector<int>& only = {});

Json to_json(const SelftestReport& r);
/// One "criterion N: PASS|FAIL  title  (detail)" line per entry.
std::string format_table(const SelftestReport& r);

}  // namespace pcfdyn
