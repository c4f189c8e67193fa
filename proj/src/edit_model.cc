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

#include "crashrefine/edit_model.h"

#include <algorithm>
#include <cassert>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crashrefine {

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kInsertSubstring:
      return "insert";
    case EditKind::kDeleteSubstring:
      return "delete";
    case EditKind::kReplaceSubstring:
      return "replace";
  }
  return "unknown";
}

absl::StatusOr<Edit> Edit::Create(size_t offset, std::string removed,
                                  std::string inserted) {
  if (removed.empty() && inserted.empty()) {
    return absl::InvalidArgumentError("edit must remove or insert bytes");
  }
  EditKind kind = EditKind::kReplaceSubstring;
  if (removed.empty()) {
    kind = EditKind::kInsertSubstring;
  } else if (inserted.empty()) {
    kind = EditKind::kDeleteSubstring;
  }
  const size_t cost = std::max(removed.size(), inserted.size());
  return Edit(kind, offset, std::move(removed), std::move(inserted), cost);
}

EditSetStats EditSet::Stats() const {
  EditSetStats stats;
  stats.count = edits.size();
  for (const Edit& e : edits) {
    stats.total_cost += e.cost();
    stats.max_cost = std::max(stats.max_cost, e.cost());
  }
  return stats;
}

EditSet GetEdits(const ByteInput& crashing, const ByteInput& passing) {
  EditSet set{{}, crashing, passing};
  const AlignmentTrace trace = Align(crashing, passing);
  const std::string_view src = crashing.view();
  const std::string_view dst = passing.view();

  size_t k = 0;
  while (k < trace.ops.size()) {
    if (trace.ops[k].kind == AlignmentOpKind::kMatch) {
      ++k;
      continue;
    }
    const AlignmentOp& first = trace.ops[k];
    size_t src_end = first.source_offset;
    size_t dst_end = first.target_offset;
    size_t run_cost = 0;
    for (; k < trace.ops.size() && trace.ops[k].kind != AlignmentOpKind::kMatch;
         ++k) {
      if (trace.ops[k].ConsumesSource()) ++src_end;
      if (trace.ops[k].ConsumesTarget()) ++dst_end;
      ++run_cost;
    }
    absl::StatusOr<Edit> edit = Edit::Create(
        first.source_offset,
        std::string(src.substr(first.source_offset,
                               src_end - first.source_offset)),
        std::string(dst.substr(first.target_offset,
                               dst_end - first.target_offset)));
    assert(edit.ok());
    // An optimal run never mixes deletes and inserts, so the coalesced cost
    // equals the number of ops in the run.
    assert(edit->cost() == run_cost);
    (void)run_cost;
    set.edits.push_back(*std::move(edit));
  }
  return set;
}

absl::StatusOr<ByteInput> EditApply(const ByteInput& input, const Edit& edit) {
  const std::string_view bytes = input.view();
  if (edit.offset() > bytes.size() ||
      edit.removed().size() > bytes.size() - edit.offset()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "stale edit: span [", edit.offset(), ", ",
        edit.offset() + edit.removed().size(), ") exceeds input of ",
        bytes.size(), " bytes"));
  }
  if (bytes.substr(edit.offset(), edit.removed().size()) != edit.removed()) {
    return absl::FailedPreconditionError(
        absl::StrCat("stale edit: bytes at offset ", edit.offset(),
                     " differ from the removed substring"));
  }
  std::string out;
  out.reserve(bytes.size() - edit.removed().size() + edit.inserted().size());
  out.append(bytes.substr(0, edit.offset()));
  out.append(edit.inserted());
  out.append(bytes.substr(edit.offset() + edit.removed().size()));
  return ByteInput(std::move(out));
}

absl::StatusOr<ByteInput> ApplyAll(const EditSet& set) {
  ByteInput current = set.baseline;
  for (auto it = set.edits.rbegin(); it != set.edits.rend(); ++it) {
    absl::StatusOr<ByteInput> next = EditApply(current, *it);
    if (!next.ok()) return next.status();
    current = *std::move(next);
  }
  return current;
}

}  // namespace crashrefine
