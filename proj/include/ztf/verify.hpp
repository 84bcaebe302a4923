#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ztf/common.hpp"

namespace ztf {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int dim = 1;
  int radius = 2;       // N: operand boxes drawn with radius <= N
  int resolution = 0;   // Q; 0 selects 2 (2N + 1). Requires Q >= 2 (2N + 1).
  bool include_timings = false;  // timings are excluded by default so a fixed
                                 // seed yields byte-identical reports
};

struct VerifyCheck {
  std::string name;
  std::string status;   // "pass" | "fail" | "skip"
  double measured = 0.0;
  double bound = 0.0;
  double seconds = 0.0;
  std::string note;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<VerifyCheck> checks;
  int failures = 0;
};

/// Runs every module's invariants on seeded random instances. Deterministic:
/// a fixed (seed, size) reproduces the same report bytes at any worker count.
VerifyReport run_verify_suite(const VerifyOptions& options);

std::string verify_report_to_json(const VerifyReport& report);

}  // namespace ztf
