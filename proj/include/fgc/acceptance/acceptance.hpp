#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fgc::acceptance {

struct Config {
  /// Caps every stated degree (0 keeps the stated orders). Values below 2 act as 2.
  int order = 0;
  std::uint64_t seed = 1;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  ///< what was checked, or the first failure
};

inline constexpr int kCriteria = 10;

/// Runs criterion `id` (1..kCriteria). Never throws: errors become failures.
Result run_one(int id, const Config& config);
std::vector<Result> run_all(const Config& config);

}  // namespace fgc::acceptance
