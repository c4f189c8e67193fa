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

#include "crashrefine/minimizer.h"

#include <algorithm>
#include <atomic>
#include <thread>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "crashrefine/alignment.h"
#include "run_budget.h"

namespace crashrefine {

std::string_view StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged:
      return "converged";
    case StopReason::kExecutionBudget:
      return "execution-budget";
    case StopReason::kWallBudget:
      return "wall-budget";
    case StopReason::kInterrupted:
      return "interrupted";
  }
  return "unknown";
}

namespace {

struct CandidateResult {
  bool evaluated = false;
  bool preserves_crash = false;
  size_t distance = 0;
};

// Runs candidates [0, limit) on up to `workers` threads. Each slot is
// written by exactly one thread. Stops handing out new candidates once the
// budget reports an interruption.
std::vector<CandidateResult> EvaluateCandidates(
    const CrashOracle& oracle, const ExecutionOutcome& reference,
    const ByteInput& passing, const std::vector<ByteInput>& candidates,
    size_t limit, size_t workers, const internal::RunBudget& budget) {
  std::vector<CandidateResult> results(candidates.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      const size_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= limit) return;
      if (budget.Interruption().has_value()) return;
      const ExecutionOutcome outcome = oracle.Run(candidates[k]);
      CandidateResult& r = results[k];
      r.evaluated = true;
      r.preserves_crash = SameCrash(reference, outcome);
      if (r.preserves_crash) r.distance = Levenshtein(passing, candidates[k]);
    }
  };
  const size_t threads = std::min(std::max<size_t>(workers, 1), limit);
  if (threads <= 1) {
    work();
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  return results;
}

}  // namespace

absl::StatusOr<MinimizationTrace> RefineCrash(const CrashOracle& oracle,
                                          const ByteInput& crashing,
                                          const ByteInput& passing,
                                          const MinimizeOptions& options,
                                          const IterationObserver& observer) {
  internal::RunBudget budget(options);
  absl::StatusOr<BaselineClassification> baseline =
      ClassifyBaseline(oracle, crashing, passing);
  if (!baseline.ok()) return baseline.status();

  MinimizationTrace trace;
  trace.reference_fingerprint = baseline->fingerprint;
  trace.baseline_executions = baseline->executions;
  trace.initial_distance = Levenshtein(passing, crashing);

  ByteInput current = crashing;
  size_t distance = trace.initial_distance;
  size_t executions = 0;
  for (size_t index = 0;; ++index) {
    if (auto stop = budget.Interruption(); stop.has_value()) {
      trace.stop_reason = *stop;
      break;
    }
    EditSet edits = GetEdits(current, passing);
    if (index == 0) trace.initial_edits = edits.Stats();
    const size_t limit =
        std::min(edits.size(), budget.RemainingExecutions());
    if (limit == 0 && !edits.empty()) {
      trace.stop_reason = StopReason::kExecutionBudget;
      break;
    }

    std::vector<ByteInput> candidates;
    candidates.reserve(edits.size());
    for (const Edit& e : edits.edits) {
      absl::StatusOr<ByteInput> applied = EditApply(current, e);
      if (!applied.ok()) return applied.status();
      candidates.push_back(*std::move(applied));
    }
    const std::vector<CandidateResult> results =
        EvaluateCandidates(oracle, baseline->crashing_outcome, passing,
                           candidates, limit, options.workers, budget);

    IterationRecord record;
    record.iteration_index = index;
    record.distance_before = distance;
    record.edits_considered = edits.size();
    std::optional<size_t> best;
    for (size_t k = 0; k < results.size(); ++k) {
      if (!results[k].evaluated) continue;
      ++record.executions;
      if (!results[k].preserves_crash) continue;
      ++record.edits_crash_preserving;
      if (!best.has_value() || results[k].distance < results[*best].distance) {
        best = k;
      }
    }
    budget.Charge(record.executions);
    executions += record.executions;

    if (best.has_value()) {
      if (results[*best].distance >= distance) {
        return absl::InternalError(absl::StrCat(
            "edit ", *best, " did not reduce the distance (", distance,
            " -> ", results[*best].distance, ")"));
      }
      record.chosen_edit = edits.edits[*best];
      record.distance_after = results[*best].distance;
      current = candidates[*best];
      distance = record.distance_after;
    } else {
      record.distance_after = distance;
    }
    trace.iterations.push_back(record);
    if (observer) observer(trace.iterations.back());

    if (record.executions < edits.size()) {
      std::optional<StopReason> stop = budget.Interruption();
      trace.stop_reason =
          stop.has_value() ? *stop : StopReason::kExecutionBudget;
      break;
    }
    if (!best.has_value()) {
      trace.stop_reason = StopReason::kConverged;
      break;
    }
  }

  trace.final_input = current;
  trace.total_executions = trace.baseline_executions + executions;
  trace.wall_millis = budget.ElapsedMillis();
  return trace;
}

DistanceReport MakeDistanceReport(const ByteInput& passing,
                                  const ByteInput& original,
                                  const ByteInput& refined) {
  DistanceReport report;
  report.dist_original = Levenshtein(passing, original);
  report.dist_refined = Levenshtein(passing, refined);
  if (report.dist_original != 0) {
    report.ratio = static_cast<double>(report.dist_refined) /
                   static_cast<double>(report.dist_original);
  }
  report.passing_size = passing.size();
  report.original_size = original.size();
  report.refined_size = refined.size();
  return report;
}

}  // namespace crashrefine
