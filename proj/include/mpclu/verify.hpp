#pragma once

// Self-checks runnable from the command line.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mpclu {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs one suite: "eft", "scalar", "matmul" or "lu". Throws ConfigError on
/// an unknown name.
std::vector<CheckResult> run_verify_suite(std::string_view suite, unsigned seed = 1);

/// Prints one PASS/FAIL line per check; returns true when all passed.
bool report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace mpclu
