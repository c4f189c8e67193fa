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

#include "crashrefine/trace_log.h"

#include <string>

#include "json.hpp"

namespace crashrefine {
namespace {

using Json = nlohmann::ordered_json;

Json EditJson(const Edit& edit) {
  Json j;
  j["kind"] = std::string(EditKindName(edit.kind()));
  j["offset"] = edit.offset();
  j["removed"] = ToHex(edit.removed());
  j["inserted"] = ToHex(edit.inserted());
  j["cost"] = edit.cost();
  return j;
}

Json FingerprintJson(const CrashFingerprint& fp) {
  Json j;
  j["signal"] = fp.signal.has_value() ? Json(*fp.signal) : Json(nullptr);
  j["signalName"] =
      fp.signal.has_value() ? Json(SignalName(*fp.signal)) : Json(nullptr);
  j["matchedToken"] =
      fp.matched_token.has_value() ? Json(*fp.matched_token) : Json(nullptr);
  j["exitCode"] = fp.exit_code.has_value() ? Json(*fp.exit_code) : Json(nullptr);
  return j;
}

}  // namespace

std::string IterationToJson(const IterationRecord& record) {
  Json j;
  j["iterationIndex"] = record.iteration_index;
  j["distanceBefore"] = record.distance_before;
  j["editsConsidered"] = record.edits_considered;
  j["editsCrashPreserving"] = record.edits_crash_preserving;
  j["chosenEdit"] = record.chosen_edit.has_value()
                        ? EditJson(*record.chosen_edit)
                        : Json(nullptr);
  j["distanceAfter"] = record.distance_after;
  j["executions"] = record.executions;
  return j.dump();
}

std::string FingerprintToJson(const CrashFingerprint& fingerprint) {
  return FingerprintJson(fingerprint).dump();
}

std::string SummaryToJson(const MinimizationTrace& trace) {
  Json j;
  j["totalExecutions"] = trace.total_executions;
  j["baselineExecutions"] = trace.baseline_executions;
  j["wallMillis"] = trace.wall_millis;
  j["finalInput"] = ToHex(trace.final_input);
  j["referenceFingerprint"] = FingerprintJson(trace.reference_fingerprint);
  j["initialDistance"] = trace.initial_distance;
  j["finalDistance"] = trace.final_distance();
  j["iterations"] = trace.iterations.size();
  j["stopReason"] = std::string(StopReasonName(trace.stop_reason));
  j["truncated"] = trace.truncated();
  j["initialEdits"] = {{"count", trace.initial_edits.count},
                       {"totalCost", trace.initial_edits.total_cost},
                       {"maxCost", trace.initial_edits.max_cost}};
  return j.dump();
}

std::string TraceToJsonLines(const MinimizationTrace& trace) {
  std::string out;
  for (const IterationRecord& record : trace.iterations) {
    out += IterationToJson(record);
    out += '\n';
  }
  out += SummaryToJson(trace);
  out += '\n';
  return out;
}

}  // namespace crashrefine
