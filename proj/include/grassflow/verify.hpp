#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grassflow {

struct CheckResult {
  int index;
  std::string name;
  bool pass;
  double measured;
  double tolerance;
  std::string detail;
  double runtime_seconds;  // console only; excluded from the JSON summary
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int max_dim = 6;
};

struct VerifySummary {
  std::uint64_t seed;
  int max_dim;
  bool all_pass;
  std::vector<CheckResult> checks;
};

/// Runs the full property suite. Deterministic given (seed, max_dim).
VerifySummary run_verify(const VerifyOptions& opt);

/// JSON rendering of the summary; byte-identical across runs with equal
/// options (runtimes are deliberately left out).
std::string summary_json(const VerifySummary& s);

}  // namespace grassflow
