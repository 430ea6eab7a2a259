#pragma once

// Self-test suite: every module invariant evaluated on seeded random inputs.

#include <cstdint>
#include <string>
#include <vector>

namespace lieharm {

struct PropertyResult {
  std::string module;
  std::string name;
  double value = 0;      // measured defect (or margin, see `name`)
  double tolerance = 0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 3;  // random inputs per property
};

struct VerifyReport {
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  std::vector<std::string> failing() const;
  /// Fixed-width pass/fail table.
  std::string table() const;
};

VerifyReport run_verification(const VerifyOptions& opts = {});

}  // namespace lieharm
