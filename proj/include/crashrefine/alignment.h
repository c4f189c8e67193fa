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

#ifndef CRASHREFINE_ALIGNMENT_H_
#define CRASHREFINE_ALIGNMENT_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "crashrefine/byte_input.h"

namespace crashrefine {

enum class AlignmentOpKind { kMatch, kSubstitute, kInsert, kDelete };

std::string_view AlignmentOpKindName(AlignmentOpKind kind);

// One step of an alignment. `source_offset` and `target_offset` are the
// positions of the cursor in each sequence before the step is taken; Insert
// consumes only a target byte and Delete only a source byte.
struct AlignmentOp {
  AlignmentOpKind kind;
  size_t source_offset;
  size_t target_offset;

  bool ConsumesSource() const { return kind != AlignmentOpKind::kInsert; }
  bool ConsumesTarget() const { return kind != AlignmentOpKind::kDelete; }
  size_t Cost() const { return kind == AlignmentOpKind::kMatch ? 0 : 1; }

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

struct AlignmentTrace {
  std::vector<AlignmentOp> ops;
  size_t source_len = 0;
  size_t target_len = 0;

  size_t Cost() const;

  friend bool operator==(const AlignmentTrace&, const AlignmentTrace&) =
      default;
};

// Unit-cost Levenshtein distance over raw bytes. Two-row dynamic program
// sized by the shorter input.
size_t Levenshtein(std::string_view a, std::string_view b);
inline size_t Levenshtein(const ByteInput& a, const ByteInput& b) {
  return Levenshtein(a.view(), b.view());
}

// Cost-optimal alignment in linear space (Hirschberg divide and conquer).
//
// Among equal-cost alignments the result is the lexicographically smallest
// op sequence under the order Match/Substitute < Delete < Insert, i.e. the
// path a left-to-right scan produces when it always takes a diagonal step if
// that step stays optimal, otherwise a delete, otherwise an insert. The split
// column at each midpoint row is the one crossed by that path; when several
// columns are crossed the leftmost is used.
AlignmentTrace Align(std::string_view source, std::string_view target);
inline AlignmentTrace Align(const ByteInput& source, const ByteInput& target) {
  return Align(source.view(), target.view());
}

// Full-matrix alignment with the same tie-break rule as Align. Quadratic
// memory; intended as a test oracle. Refuses inputs whose DP matrix would
// exceed kDpReferenceMaxCells.
inline constexpr size_t kDpReferenceMaxCells = size_t{1} << 24;
absl::StatusOr<AlignmentTrace> DpAlignReference(std::string_view source,
                                                std::string_view target);

// Replays `trace` against the two sequences. Returns an error describing the
// first inconsistency (offset gap, wrong Match/Substitute classification,
// incomplete consumption).
absl::Status ValidateTrace(const AlignmentTrace& trace,
                           std::string_view source, std::string_view target);

}  // namespace crashrefine

#endif  // CRASHREFINE_ALIGNMENT_H_
