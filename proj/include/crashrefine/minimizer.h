// Copyright 2026 The crashrefine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CRASHREFINE_MINIMIZER_H_
#define CRASHREFINE_MINIMIZER_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "crashrefine/byte_input.h"
#include "crashrefine/edit_model.h"
#include "crashrefine/target_executor.h"

namespace crashrefine {

enum class StopReason {
  kConverged,        // no edit preserves the crash
  kExecutionBudget,  // max_executions reached
  kWallBudget,       // max_wall_time elapsed
  kInterrupted,      // cancel flag raised
};

std::string_view StopReasonName(StopReason reason);

struct MinimizeOptions {
  // Candidate inputs evaluated concurrently. The result does not depend on
  // this value.
  size_t workers = 1;
  // Budget on target runs made by the minimization itself; baseline
  // classification runs are not counted.
  std::optional<size_t> max_executions;
  std::optional<std::chrono::milliseconds> max_wall_time;
  // Polled between target runs. When set, the run stops and returns the best
  // input found so far.
  const std::atomic<bool>* cancel = nullptr;
};

struct IterationRecord {
  size_t iteration_index = 0;
  size_t distance_before = 0;
  size_t edits_considered = 0;
  size_t edits_crash_preserving = 0;
  std::optional<Edit> chosen_edit;
  size_t distance_after = 0;
  size_t executions = 0;

  friend bool operator==(const IterationRecord&,
                         const IterationRecord&) = default;
};

struct MinimizationTrace {
  std::vector<IterationRecord> iterations;
  size_t baseline_executions = 0;
  // baseline_executions plus the per-iteration executions.
  size_t total_executions = 0;
  int64_t wall_millis = 0;
  ByteInput final_input;
  CrashFingerprint reference_fingerprint;
  size_t initial_distance = 0;
  EditSetStats initial_edits;
  StopReason stop_reason = StopReason::kConverged;

  bool truncated() const { return stop_reason != StopReason::kConverged; }
  size_t final_distance() const {
    return iterations.empty() ? initial_distance
                              : iterations.back().distance_after;
  }
};

// Called after each iteration is recorded, from the thread running the
// minimization.
using IterationObserver = std::function<void(const IterationRecord&)>;

// Refines `crashing` towards `passing` one edit at a time. Each round derives
// the edit set between the current input and `passing`, runs every candidate
// obtained by applying a single edit, and commits the crash-preserving
// candidate closest to `passing` (lowest edit index on ties). Stops when no
// candidate preserves the crash or a budget runs out.
//
// Preconditions are checked with ClassifyBaseline; its errors are returned
// unchanged. Budget exhaustion is not an error: the trace is flagged and
// holds the best input found.
absl::StatusOr<MinimizationTrace> RefineCrash(const CrashOracle& oracle,
                                          const ByteInput& crashing,
                                          const ByteInput& passing,
                                          const MinimizeOptions& options,
                                          const IterationObserver& observer = {});

struct DdminResult {
  ByteInput output;
  CrashFingerprint fingerprint;
  // Including the two classification runs.
  size_t executions = 0;
  StopReason stop_reason = StopReason::kConverged;
};

// Zeller's ddmin over byte chunks with "crashes with the same fingerprint"
// as the failure predicate. A converged result is 1-minimal: dropping any
// single byte loses the crash. `options.workers` is ignored.
absl::StatusOr<DdminResult> Ddmin(const CrashOracle& oracle,
                                  const ByteInput& crashing,
                                  const MinimizeOptions& options);

// Post-hoc check that no single byte of `input` can be removed while still
// crashing with `fingerprint`. Runs the oracle |input| times.
bool IsOneMinimal(const CrashOracle& oracle, const ByteInput& input,
                  const CrashFingerprint& fingerprint);

struct DistanceReport {
  size_t dist_original = 0;
  size_t dist_refined = 0;
  // dist_refined / dist_original; absent when dist_original is zero.
  std::optional<double> ratio;
  size_t passing_size = 0;
  size_t original_size = 0;
  size_t refined_size = 0;
};

DistanceReport MakeDistanceReport(const ByteInput& passing,
                                  const ByteInput& original,
                                  const ByteInput& refined);

}  // namespace crashrefine

#endif  // CRASHREFINE_MINIMIZER_H_
