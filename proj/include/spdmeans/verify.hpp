#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdmeans/parallel.hpp"

namespace spdmeans {

enum class Suite { Properties, Order, Divergence, Barycenter, All };
Suite suite_from_string(const std::string& name);
const char* to_string(Suite s);

struct VerifyOptions {
  int dim_min = 2;
  int dim_max = 6;
  long samples = 200;
  std::uint64_t seed = 1;
  Execution exec = Execution::Parallel;
  Suite suite = Suite::All;
  /// Multiplies every tolerance. 1.0 in normal operation; the CLI's hidden
  /// corruption hook passes a negative value so that the suite demonstrably
  /// fails and emits replay bundles.
  double tol_scale = 1.0;
  int max_replays = 3;
};

struct ReplayRecord {
  std::string property;
  std::uint64_t sample_seed = 0;
  int dim = 0;
  std::string params;  // JSON text with the inputs/parameters of the offending sample
  std::string detail;
  double margin = 0.0;
};

struct PropertyResult {
  std::string name;
  long samples = 0;
  long passes = 0;
  long skips = 0;       // whole samples skipped (hypothesis not satisfiable)
  long violations = 0;
  long sub_checks = 0;  // conditional assertions attempted inside samples
  long sub_skips = 0;   // conditional assertions skipped inside samples
  double worst_margin = 0.0;
  std::string note;
  std::vector<ReplayRecord> replays;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;

  long total_violations() const;
  bool all_passed() const { return total_violations() == 0; }
};

VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace spdmeans
