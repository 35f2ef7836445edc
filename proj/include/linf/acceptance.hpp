#pragma once

// The ten acceptance criteria as runnable checks, shared by the acceptance
// binary and the CLI selftest.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace linf::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

std::vector<CriterionResult> run_all(std::uint64_t seed,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace linf::acceptance
