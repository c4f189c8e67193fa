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

#ifndef CRASHREFINE_EDIT_MODEL_H_
#define CRASHREFINE_EDIT_MODEL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "crashrefine/alignment.h"
#include "crashrefine/byte_input.h"

namespace crashrefine {

enum class EditKind { kInsertSubstring, kDeleteSubstring, kReplaceSubstring };

std::string_view EditKindName(EditKind kind);

// A substring insertion, deletion or replacement anchored at a byte offset of
// the input it was derived from. Cost is the number of unit alignment ops the
// edit stands for, max(|removed|, |inserted|). Zero-cost edits cannot be
// constructed.
class Edit {
 public:
  static absl::StatusOr<Edit> Create(size_t offset, std::string removed,
                                     std::string inserted);

  EditKind kind() const { return kind_; }
  size_t offset() const { return offset_; }
  const std::string& removed() const { return removed_; }
  const std::string& inserted() const { return inserted_; }
  size_t cost() const { return cost_; }

  friend bool operator==(const Edit&, const Edit&) = default;

 private:
  Edit(EditKind kind, size_t offset, std::string removed, std::string inserted,
       size_t cost)
      : kind_(kind),
        offset_(offset),
        removed_(std::move(removed)),
        inserted_(std::move(inserted)),
        cost_(cost) {}

  EditKind kind_;
  size_t offset_;
  std::string removed_;
  std::string inserted_;
  size_t cost_;
};

struct EditSetStats {
  size_t count = 0;
  size_t total_cost = 0;
  size_t max_cost = 0;
};

// Edits turning `baseline` into `reference`, sorted by offset with disjoint
// removed spans. Applying all of them from the highest offset down yields
// `reference`; their costs sum to the Levenshtein distance.
struct EditSet {
  std::vector<Edit> edits;
  ByteInput baseline;
  ByteInput reference;

  bool empty() const { return edits.empty(); }
  size_t size() const { return edits.size(); }
  EditSetStats Stats() const;
};

// Aligns `crashing` against `passing` and coalesces each maximal run of
// non-match ops into one edit: delete-only runs become deletions, insert-only
// runs insertions, anything else a replacement.
EditSet GetEdits(const ByteInput& crashing, const ByteInput& passing);

// Splices `edit` into `input`. Fails with FailedPrecondition when the edit
// does not fit or the bytes at its offset differ from edit.removed(), which
// means the edit was derived from a different input.
absl::StatusOr<ByteInput> EditApply(const ByteInput& input, const Edit& edit);

// Applies every edit of `set` to set.baseline, highest offset first.
absl::StatusOr<ByteInput> ApplyAll(const EditSet& set);

}  // namespace crashrefine

#endif  // CRASHREFINE_EDIT_MODEL_H_
