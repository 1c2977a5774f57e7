#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pfree {

struct SuiteOptions {
  bool quick = false;  // smaller ranges, no runtime limits
  unsigned workers = 1;
  std::uint64_t seed = 20240611;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Ids 1..9.
CriterionResult run_criterion(int id, const SuiteOptions& opts);

// Runs every criterion in order; `progress` (if set) sees each result as it lands.
std::vector<CriterionResult> run_suite(const SuiteOptions& opts,
                                       const std::function<void(const CriterionResult&)>& progress = {});

// "[PASS] 3 title (1.23 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace pfree
