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

#ifndef CRASHREFINE_TOOLS_CLI_SUPPORT_H_
#define CRASHREFINE_TOOLS_CLI_SUPPORT_H_

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "crashrefine/minimizer.h"
#include "crashrefine/target_executor.h"

namespace crashrefine::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitPrecondition = 2,
  kExitNondeterministic = 3,
  kExitTruncated = 4,
  kExitInterrupted = 130,
};

// Options shared by every subcommand that runs the target.
struct GlobalOptions {
  int64_t timeout_ms = 1000;
  std::string crash_signals;
  std::string crash_token;
  size_t workers = 0;
  std::optional<size_t> max_execs;
  std::optional<int64_t> max_wall_ms;
  std::vector<std::string> env;
  std::string cwd;
  bool verbose = false;
};

size_t DefaultWorkerCount();

// Maps a library error to the process exit code.
int ExitCodeFor(const absl::Status& status);

// Prints "crashrefine: <message>" to stderr and returns the exit code.
int Fail(const absl::Status& status);

absl::StatusOr<TargetSpec> BuildTarget(const std::string& command,
                                       const GlobalOptions& options);

MinimizeOptions BuildMinimizeOptions(const GlobalOptions& options);

// SIGINT/SIGTERM raise the returned flag instead of killing the process.
const std::atomic<bool>* InstallInterruptHandler();

int ExitCodeFor(StopReason reason);

}  // namespace crashrefine::cli

#endif  // CRASHREFINE_TOOLS_CLI_SUPPORT_H_
