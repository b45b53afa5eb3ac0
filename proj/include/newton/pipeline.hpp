#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>

#include "newton/json_io.hpp"

namespace newton {

struct PipelineConfig {
  std::string poly_text;
  std::size_t nvars = 0;      // 0: inferred
  std::optional<Json> fan;    // regular fan refining Sigma_Delta; default: regularize(Sigma_Delta)
  std::optional<int> truncation;
  int primes = 3;
  std::uint64_t seed = 1;
  int det_trials = 200;
};

struct PipelineResult {
  Json report;
  bool pass = false;
  int exit_code = 0;  // 0 pass, 1 failed check, 2 input or precondition error, 3 resource cap
};

/// Exit code for an exception escaping a stage: unmet input or
/// precondition 2, exhausted cap 3, failed check or anything else 1.
int exit_code_for(const std::exception& e);

PipelineResult run_verify_all(const PipelineConfig& cfg);

/// Seeded random (rows x cols) matrices through lemma_3_1_check, and
/// row-stochastic square ones through corollary_3_2_check.
Json detlemma_trials(std::size_t rows, std::size_t cols, int trials, std::uint64_t seed);

/// "json" (indented, sorted keys) or "text" (the summary lines, then the
/// flattened report). Throws InputError for any other format.
std::string emit_report(const Json& report, std::string_view format);

}  // namespace newton
