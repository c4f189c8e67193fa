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

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "crashrefine/minimizer.h"
#include "run_budget.h"

namespace crashrefine {
namespace {

// Chunk boundaries of an n-way split of `size` bytes; chunk i is
// [bounds[i], bounds[i + 1]).
std::vector<size_t> SplitPoints(size_t size, size_t n) {
  std::vector<size_t> bounds(n + 1);
  for (size_t i = 0; i <= n; ++i) bounds[i] = i * size / n;
  return bounds;
}

class DdminRun {
 public:
  DdminRun(const CrashOracle& oracle, const CrashFingerprint& fingerprint,
           const MinimizeOptions& options)
      : oracle_(oracle), fingerprint_(fingerprint), budget_(options) {}

  // Whether `input` still crashes with the reference fingerprint. Results
  // are memoized. Returns nullopt when the budget forbids another run.
  std::optional<bool> Test(const std::string& input) {
    if (auto it = cache_.find(input); it != cache_.end()) return it->second;
    if (auto stop = budget_.Interruption(); stop.has_value()) {
      stop_ = *stop;
      return std::nullopt;
    }
    if (budget_.RemainingExecutions() == 0) {
      stop_ = StopReason::kExecutionBudget;
      return std::nullopt;
    }
    const ExecutionOutcome outcome = oracle_.Run(ByteInput(input));
    budget_.Charge(1);
    ++executions_;
    const bool fails = outcome.Fingerprint() == fingerprint_;
    cache_.emplace(input, fails);
    return fails;
  }

  std::string Minimize(std::string current) {
    size_t n = 2;
    while (current.size() >= 2) {
      n = std::min(n, current.size());
      const std::vector<size_t> bounds = SplitPoints(current.size(), n);
      bool reduced = false;

      for (size_t i = 0; i < n && !reduced; ++i) {
        std::string subset =
            current.substr(bounds[i], bounds[i + 1] - bounds[i]);
        std::optional<bool> fails = Test(subset);
        if (!fails.has_value()) return current;
        if (*fails) {
          current = std::move(subset);
          n = 2;
          reduced = true;
        }
      }
      // With two chunks every complement is also a subset.
      for (size_t i = 0; i < n && !reduced && n > 2; ++i) {
        std::string complement = current.substr(0, bounds[i]);
        complement.append(current, bounds[i + 1], std::string::npos);
        std::optional<bool> fails = Test(complement);
        if (!fails.has_value()) return current;
        if (*fails) {
          current = std::move(complement);
          n = std::max<size_t>(n - 1, 2);
          reduced = true;
        }
      }
      if (!reduced) {
        if (n >= current.size()) break;
        n = std::min(n * 2, current.size());
      }
    }
    return current;
  }

  size_t executions() const { return executions_; }
  StopReason stop_reason() const { return stop_; }

 private:
  const CrashOracle& oracle_;
  const CrashFingerprint& fingerprint_;
  internal::RunBudget budget_;
  std::map<std::string, bool> cache_;
  size_t executions_ = 0;
  StopReason stop_ = StopReason::kConverged;
};

}  // namespace

absl::StatusOr<DdminResult> Ddmin(const CrashOracle& oracle,
                                  const ByteInput& crashing,
                                  const MinimizeOptions& options) {
  DdminResult result;
  absl::StatusOr<CrashFingerprint> fingerprint =
      ClassifyCrashing(oracle, crashing, &result.executions);
  if (!fingerprint.ok()) return fingerprint.status();
  result.fingerprint = *fingerprint;

  DdminRun run(oracle, result.fingerprint, options);
  result.output = ByteInput(run.Minimize(crashing.str()));
  result.executions += run.executions();
  result.stop_reason = run.stop_reason();
  return result;
}

bool IsOneMinimal(const CrashOracle& oracle, const ByteInput& input,
                  const CrashFingerprint& fingerprint) {
  for (size_t i = 0; i < input.size(); ++i) {
    std::string without = input.str();
    without.erase(i, 1);
    if (oracle.Run(ByteInput(std::move(without))).Fingerprint() ==
        fingerprint) {
      return false;
    }
  }
  return true;
}

}  // namespace crashrefine
