#pragma once

#include <cstdint>
#include <string>

namespace curvepi {

struct SelftestOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool pretty = false;
};

// Runs the oracle suites and returns a JSON report. The report depends only
// on the seed (never on jobs or timing).
std::string selftest_report(const SelftestOptions& opts, bool* passed = nullptr);

}  // namespace curvepi
