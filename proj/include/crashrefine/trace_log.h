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

#ifndef CRASHREFINE_TRACE_LOG_H_
#define CRASHREFINE_TRACE_LOG_H_

#include <string>

#include "crashrefine/minimizer.h"

namespace crashrefine {

// JSON-lines rendering of a minimization run. One object per iteration with
// the fields
//
//   iterationIndex, distanceBefore, editsConsidered, editsCrashPreserving,
//   chosenEdit, distanceAfter, executions
//
// where chosenEdit is null or {kind, offset, removed, inserted, cost} with
// byte strings as lowercase hex. The last line is the run summary:
//
//   totalExecutions, baselineExecutions, wallMillis, finalInput,
//   referenceFingerprint, initialDistance, finalDistance, iterations,
//   stopReason, truncated, initialEdits
//
// wallMillis is the only timing-dependent field.
std::string IterationToJson(const IterationRecord& record);
std::string SummaryToJson(const MinimizationTrace& trace);
std::string FingerprintToJson(const CrashFingerprint& fingerprint);

// All iteration lines followed by the summary line, newline-terminated.
std::string TraceToJsonLines(const MinimizationTrace& trace);

}  // namespace crashrefine

#endif  // CRASHREFINE_TRACE_LOG_H_
