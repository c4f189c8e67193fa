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

#ifndef CRASHREFINE_SRC_RUN_BUDGET_H_
#define CRASHREFINE_SRC_RUN_BUDGET_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>

#include "crashrefine/minimizer.h"

namespace crashrefine::internal {

// Tracks the execution, wall-time and cancellation limits of one
// minimization run. Execution accounting is done by the single thread that
// owns the run; the time and cancel checks may be polled from workers.
class RunBudget {
 public:
  explicit RunBudget(const MinimizeOptions& options)
      : options_(options), start_(std::chrono::steady_clock::now()) {}

  std::chrono::steady_clock::time_point start() const { return start_; }

  // Executions still allowed; SIZE_MAX when unbounded.
  size_t RemainingExecutions() const {
    if (!options_.max_executions.has_value()) {
      return std::numeric_limits<size_t>::max();
    }
    return used_ >= *options_.max_executions ? 0
                                             : *options_.max_executions - used_;
  }
  void Charge(size_t executions) { used_ += executions; }

  // Wall-time or cancellation stop, if one applies right now.
  std::optional<StopReason> Interruption() const {
    if (options_.cancel != nullptr &&
        options_.cancel->load(std::memory_order_relaxed)) {
      return StopReason::kInterrupted;
    }
    if (options_.max_wall_time.has_value() &&
        std::chrono::steady_clock::now() - start_ >= *options_.max_wall_time) {
      return StopReason::kWallBudget;
    }
    return std::nullopt;
  }

  int64_t ElapsedMillis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  const MinimizeOptions& options_;
  std::chrono::steady_clock::time_point start_;
  size_t used_ = 0;
};

}  // namespace crashrefine::internal

#endif  // CRASHREFINE_SRC_RUN_BUDGET_H_
