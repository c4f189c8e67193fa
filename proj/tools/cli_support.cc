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

#include "cli_support.h"

#include <signal.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace crashrefine::cli {
namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void OnInterrupt(int) {
  g_interrupted.store(true, std::memory_order_relaxed);
}

}  // namespace

size_t DefaultWorkerCount() {
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<size_t>(hw, 1, 8);
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kInvalidArgument:
      return kExitPrecondition;
    case absl::StatusCode::kAborted:
      return kExitNondeterministic;
    default:
      return kExitInternal;
  }
}

int ExitCodeFor(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged:
      return kExitOk;
    case StopReason::kInterrupted:
      return kExitInterrupted;
    case StopReason::kExecutionBudget:
    case StopReason::kWallBudget:
      return kExitTruncated;
  }
  return kExitInternal;
}

int Fail(const absl::Status& status) {
  std::fprintf(stderr, "crashrefine: %s\n",
               std::string(status.message()).c_str());
  return ExitCodeFor(status);
}

absl::StatusOr<TargetSpec> BuildTarget(const std::string& command,
                                       const GlobalOptions& options) {
  TargetConfig config;
  absl::StatusOr<std::vector<std::string>> argv = SplitCommandLine(command);
  if (!argv.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--target: ", std::string(argv.status().message())));
  }
  config.command = *std::move(argv);
  config.timeout = std::chrono::milliseconds(options.timeout_ms);
  for (const std::string& kv : options.env) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("--env expects KEY=VALUE, got ", kv));
    }
    config.env[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (!options.crash_token.empty()) config.crash_token_pattern = options.crash_token;
  if (!options.cwd.empty()) config.working_dir = options.cwd;
  if (!options.crash_signals.empty()) {
    config.crash_signals.clear();
    for (absl::string_view name :
         absl::StrSplit(options.crash_signals, ',', absl::SkipWhitespace())) {
      absl::StatusOr<int> sig = ParseSignal(std::string(name));
      if (!sig.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "--crash-signals: ", std::string(sig.status().message())));
      }
      config.crash_signals.insert(*sig);
    }
  }
  return TargetSpec::Create(std::move(config));
}

MinimizeOptions BuildMinimizeOptions(const GlobalOptions& options) {
  MinimizeOptions out;
  out.workers = options.workers == 0 ? DefaultWorkerCount() : options.workers;
  out.max_executions = options.max_execs;
  if (options.max_wall_ms) {
    out.max_wall_time = std::chrono::milliseconds(*options.max_wall_ms);
  }
  out.cancel = &g_interrupted;
  return out;
}

const std::atomic<bool>* InstallInterruptHandler() {
  struct sigaction sa = {};
  sa.sa_handler = OnInterrupt;
  sigemptyset(&sa.sa_mask);
  sigaction(SIGINT, &sa, nullptr);
  sigaction(SIGTERM, &sa, nullptr);
  return &g_interrupted;
}

}  // namespace crashrefine::cli
