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

#ifndef CRASHREFINE_TARGET_EXECUTOR_H_
#define CRASHREFINE_TARGET_EXECUTOR_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "crashrefine/byte_input.h"

namespace crashrefine {

// Token in a command template that is replaced with the path of a file
// holding the input. Without it the input goes to standard input.
inline constexpr std::string_view kInputPlaceholder = "@@";

inline constexpr size_t kStderrCaptureLimit = size_t{1} << 20;
inline constexpr std::chrono::milliseconds kDefaultTimeout{1000};

// SIGSEGV, SIGABRT, SIGILL, SIGBUS, SIGFPE.
std::set<int> DefaultCrashSignals();

// Accepts "SEGV", "SIGSEGV", "segv" or a decimal signal number.
absl::StatusOr<int> ParseSignal(std::string_view name);
std::string SignalName(int signal);

// Splits a command string into arguments. Whitespace separates arguments;
// single quotes, double quotes and backslash escapes behave as in sh.
absl::StatusOr<std::vector<std::string>> SplitCommandLine(
    std::string_view command);

struct TargetConfig {
  std::vector<std::string> command;
  std::chrono::milliseconds timeout = kDefaultTimeout;
  std::map<std::string, std::string> env;
  // ECMAScript regex searched in captured stderr. A match classifies the
  // run as a crash; the matched text becomes part of the fingerprint.
  std::optional<std::string> crash_token_pattern;
  std::optional<std::filesystem::path> working_dir;
  std::set<int> crash_signals = DefaultCrashSignals();
};

// Validated, immutable description of the program under test. Cheap to copy
// and safe to share between threads.
class TargetSpec {
 public:
  static absl::StatusOr<TargetSpec> Create(TargetConfig config);

  const TargetConfig& config() const { return *config_; }
  bool uses_placeholder() const { return uses_placeholder_; }
  const std::regex* crash_token_regex() const { return token_regex_.get(); }

 private:
  TargetSpec() = default;

  std::shared_ptr<const TargetConfig> config_;
  std::shared_ptr<const std::regex> token_regex_;
  bool uses_placeholder_ = false;
};

enum class OutcomeKind { kPass, kCrash, kHang, kSetupError };

std::string_view OutcomeKindName(OutcomeKind kind);

// Equality key for "the same crash": the terminating signal and/or the
// matched canary token. The exit code is only part of the key when the crash
// was recognized by token and the process exited normally.
struct CrashFingerprint {
  std::optional<int> signal;
  std::optional<std::string> matched_token;
  std::optional<int> exit_code;

  std::string ToString() const;

  friend bool operator==(const CrashFingerprint&,
                         const CrashFingerprint&) = default;
};

struct ExecutionOutcome {
  OutcomeKind kind = OutcomeKind::kSetupError;
  std::optional<int> exit_code;
  std::optional<int> signal;
  std::optional<std::string> matched_token;
  int64_t duration_millis = 0;
  // FNV-1a of the captured stderr. Diagnostics only.
  uint64_t stderr_digest = 0;
  // Why the run could not be set up; empty otherwise.
  std::string setup_error;

  // Present only for kind == kCrash.
  std::optional<CrashFingerprint> Fingerprint() const;
};

// Runs the target once on `input`. Never throws and never returns an error:
// failures to launch are reported as kSetupError outcomes. Safe to call
// concurrently; every call uses its own temporary file and pipes.
ExecutionOutcome Execute(const TargetSpec& target, const ByteInput& input);

// True iff both outcomes are crashes with equal fingerprints.
bool SameCrash(const ExecutionOutcome& a, const ExecutionOutcome& b);

// Something that can run an input and report what happened. Implementations
// must be safe for concurrent Run calls.
class CrashOracle {
 public:
  virtual ~CrashOracle() = default;
  virtual ExecutionOutcome Run(const ByteInput& input) const = 0;
};

class TargetOracle : public CrashOracle {
 public:
  explicit TargetOracle(TargetSpec spec) : spec_(std::move(spec)) {}
  ExecutionOutcome Run(const ByteInput& input) const override {
    return Execute(spec_, input);
  }
  const TargetSpec& spec() const { return spec_; }

 private:
  TargetSpec spec_;
};

struct BaselineClassification {
  CrashFingerprint fingerprint;
  ExecutionOutcome crashing_outcome;
  ExecutionOutcome passing_outcome;
  size_t executions = 0;
};

// Checks the refinement preconditions: `crashing` crashes, `passing` passes,
// and a second run of `crashing` reproduces the same fingerprint. Errors are
// FailedPrecondition for a misbehaving input and Aborted for a
// nondeterministic target.
absl::StatusOr<BaselineClassification> ClassifyBaseline(
    const CrashOracle& oracle, const ByteInput& crashing,
    const ByteInput& passing);

// The crashing half of ClassifyBaseline: two runs of `crashing`, which must
// crash with the same fingerprint.
absl::StatusOr<CrashFingerprint> ClassifyCrashing(const CrashOracle& oracle,
                                                  const ByteInput& crashing,
                                                  size_t* executions);

}  // namespace crashrefine

#endif  // CRASHREFINE_TARGET_EXECUTOR_H_
