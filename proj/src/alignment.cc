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

#include "crashrefine/alignment.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crashrefine {

std::string_view AlignmentOpKindName(AlignmentOpKind kind) {
  switch (kind) {
    case AlignmentOpKind::kMatch:
      return "match";
    case AlignmentOpKind::kSubstitute:
      return "substitute";
    case AlignmentOpKind::kInsert:
      return "insert";
    case AlignmentOpKind::kDelete:
      return "delete";
  }
  return "unknown";
}

size_t AlignmentTrace::Cost() const {
  size_t cost = 0;
  for (const AlignmentOp& op : ops) cost += op.Cost();
  return cost;
}

size_t Levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // b is the shorter sequence; rows run over a.
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      const size_t sub = diag + (a[i - 1] != b[j - 1] ? 1 : 0);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

// The linear-space solver works on an abstract grid: rows are consumed by
// vertical steps, columns by horizontal steps. Which of source/target plays
// the row role is chosen so that the per-row buffers have the length of the
// shorter sequence.
enum class Step : uint8_t { kDiag, kVert, kHoriz };

class GridSolver {
 public:
  GridSolver(std::string_view rows, std::string_view cols,
             bool vert_before_horiz, std::vector<Step>* out)
      : rows_all_(rows),
        cols_all_(cols),
        vert_before_horiz_(vert_before_horiz),
        out_(out) {}

  void Run() { Solve(rows_all_, cols_all_); }

 private:
  // How the lexicographically smallest optimal path into a cell of the
  // current row is built: the smallest path into cell `prev` of the previous
  // row, one step `entry_step` (diagonal or vertical) into this row, then
  // `horiz_run` horizontal steps.
  struct PathRep {
    uint32_t prev;
    Step entry_step;
    uint32_t horiz_run;
  };

  struct Row {
    std::vector<size_t> dist;
    std::vector<uint32_t> rank;   // lexicographic order of paths in this row
    std::vector<uint32_t> entry;  // column where the path entered this row
  };

  bool StepBefore(Step a, Step b) const {
    if (a == b) return false;
    if (a == Step::kDiag) return true;
    if (b == Step::kDiag) return false;
    return (a == Step::kVert) == vert_before_horiz_;
  }

  // Strict lexicographic comparison of two paths ending in the same row.
  bool PathLess(const PathRep& p1, const PathRep& p2, const Row& prev) const {
    if (p1.prev == p2.prev) {
      if (p1.entry_step != p2.entry_step) {
        return StepBefore(p1.entry_step, p2.entry_step);
      }
      return p1.horiz_run < p2.horiz_run;
    }
    if (p1.prev < p2.prev) {
      // Path into p2.prev runs through p1.prev: they part ways where p1 leaves
      // the previous row and p2 keeps moving horizontally.
      if (prev.entry[p2.prev] <= p1.prev) {
        return StepBefore(p1.entry_step, Step::kHoriz);
      }
    } else if (prev.entry[p1.prev] <= p2.prev) {
      return StepBefore(Step::kHoriz, p2.entry_step);
    }
    return prev.rank[p1.prev] < prev.rank[p2.prev];
  }

  // Forward pass over rows [0, rows.size()] of the subgrid; leaves distances
  // and path ranks of the last row in `row`.
  void ForwardRanked(std::string_view rows, std::string_view cols, Row& row) {
    const size_t width = cols.size() + 1;
    row.dist.resize(width);
    row.rank.resize(width);
    row.entry.assign(width, 0);
    for (size_t c = 0; c < width; ++c) {
      row.dist[c] = c;
      row.rank[c] = static_cast<uint32_t>(c);
    }
    Row next;
    next.dist.resize(width);
    next.rank.resize(width);
    next.entry.resize(width);
    std::vector<PathRep> reps(width);
    std::vector<uint32_t> order(width);

    for (size_t r = 1; r <= rows.size(); ++r) {
      const char rc = rows[r - 1];
      for (size_t c = 0; c < width; ++c) {
        size_t best = row.dist[c] + 1;
        PathRep rep{static_cast<uint32_t>(c), Step::kVert, 0};
        if (c > 0) {
          const size_t diag = row.dist[c - 1] + (rc != cols[c - 1] ? 1 : 0);
          const size_t horiz = next.dist[c - 1] + 1;
          const PathRep diag_rep{static_cast<uint32_t>(c - 1), Step::kDiag, 0};
          PathRep horiz_rep = reps[c - 1];
          ++horiz_rep.horiz_run;
          if (diag < best || (diag == best && PathLess(diag_rep, rep, row))) {
            best = diag;
            rep = diag_rep;
          }
          if (horiz < best ||
              (horiz == best && PathLess(horiz_rep, rep, row))) {
            best = horiz;
            rep = horiz_rep;
          }
        }
        next.dist[c] = best;
        reps[c] = rep;
        next.entry[c] = static_cast<uint32_t>(c - rep.horiz_run);
      }
      std::iota(order.begin(), order.end(), uint32_t{0});
      std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
        return PathLess(reps[x], reps[y], row);
      });
      for (size_t i = 0; i < width; ++i) {
        next.rank[order[i]] = static_cast<uint32_t>(i);
      }
      std::swap(row, next);
    }
  }

  // suffix[c] = distance(rows, cols[c..]).
  static void BackwardDistances(std::string_view rows, std::string_view cols,
                                std::vector<size_t>& suffix) {
    const size_t width = cols.size() + 1;
    suffix.resize(width);
    for (size_t c = 0; c < width; ++c) suffix[c] = cols.size() - c;
    for (size_t r = rows.size(); r-- > 0;) {
      size_t diag = suffix[cols.size()];
      suffix[cols.size()] = rows.size() - r;
      for (size_t c = cols.size(); c-- > 0;) {
        const size_t down = suffix[c];
        const size_t sub = diag + (rows[r] != cols[c] ? 1 : 0);
        suffix[c] = std::min({sub, down + 1, suffix[c + 1] + 1});
        diag = down;
      }
    }
  }

  // Single-row subproblem: full suffix table and a greedy left-to-right walk.
  void SolveOneRow(std::string_view rows, std::string_view cols) {
    const size_t width = cols.size() + 1;
    std::vector<size_t> bottom(width);
    std::vector<size_t> top(width);
    for (size_t c = 0; c < width; ++c) bottom[c] = cols.size() - c;
    top[cols.size()] = 1;
    for (size_t c = cols.size(); c-- > 0;) {
      top[c] = std::min({bottom[c + 1] + (rows[0] != cols[c] ? 1 : 0),
                         bottom[c] + 1, top[c + 1] + 1});
    }
    size_t c = 0;
    bool on_top = true;
    while (on_top || c < cols.size()) {
      if (!on_top) {
        out_->push_back(Step::kHoriz);
        ++c;
        continue;
      }
      const size_t here = top[c];
      const bool diag_ok = c < cols.size() &&
                           bottom[c + 1] + (rows[0] != cols[c] ? 1 : 0) == here;
      const bool vert_ok = bottom[c] + 1 == here;
      const bool horiz_ok = c < cols.size() && top[c + 1] + 1 == here;
      Step step;
      if (diag_ok) {
        step = Step::kDiag;
      } else if (vert_ok && horiz_ok) {
        step = vert_before_horiz_ ? Step::kVert : Step::kHoriz;
      } else {
        step = vert_ok ? Step::kVert : Step::kHoriz;
      }
      out_->push_back(step);
      if (step != Step::kVert) ++c;
      if (step != Step::kHoriz) on_top = false;
    }
  }

  void Solve(std::string_view rows, std::string_view cols) {
    if (rows.empty()) {
      out_->insert(out_->end(), cols.size(), Step::kHoriz);
      return;
    }
    if (cols.empty()) {
      out_->insert(out_->end(), rows.size(), Step::kVert);
      return;
    }
    if (rows.size() == 1) {
      SolveOneRow(rows, cols);
      return;
    }
    const size_t mid = rows.size() / 2;
    size_t split = 0;
    {
      Row forward;
      ForwardRanked(rows.substr(0, mid), cols, forward);
      std::vector<size_t> suffix;
      BackwardDistances(rows.substr(mid), cols, suffix);
      size_t best_total = forward.dist[0] + suffix[0];
      for (size_t c = 1; c <= cols.size(); ++c) {
        const size_t total = forward.dist[c] + suffix[c];
        if (total < best_total ||
            (total == best_total && forward.rank[c] < forward.rank[split])) {
          best_total = total;
          split = c;
        }
      }
    }
    Solve(rows.substr(0, mid), cols.substr(0, split));
    Solve(rows.substr(mid), cols.substr(split));
  }

  std::string_view rows_all_;
  std::string_view cols_all_;
  bool vert_before_horiz_;
  std::vector<Step>* out_;
};

}  // namespace

AlignmentTrace Align(std::string_view source, std::string_view target) {
  AlignmentTrace trace;
  trace.source_len = source.size();
  trace.target_len = target.size();

  // Delete is preferred over Insert. With source on the rows a delete is a
  // vertical step; transposed, it is a horizontal one.
  const bool transposed = target.size() > source.size();
  std::vector<Step> steps;
  steps.reserve(source.size() + target.size());
  if (transposed) {
    GridSolver(target, source, /*vert_before_horiz=*/false, &steps).Run();
  } else {
    GridSolver(source, target, /*vert_before_horiz=*/true, &steps).Run();
  }

  trace.ops.reserve(steps.size());
  size_t i = 0;
  size_t j = 0;
  for (Step step : steps) {
    AlignmentOpKind kind;
    if (step == Step::kDiag) {
      kind = source[i] == target[j] ? AlignmentOpKind::kMatch
                                    : AlignmentOpKind::kSubstitute;
    } else if ((step == Step::kVert) != transposed) {
      kind = AlignmentOpKind::kDelete;
    } else {
      kind = AlignmentOpKind::kInsert;
    }
    trace.ops.push_back({kind, i, j});
    if (kind != AlignmentOpKind::kInsert) ++i;
    if (kind != AlignmentOpKind::kDelete) ++j;
  }
  return trace;
}

absl::StatusOr<AlignmentTrace> DpAlignReference(std::string_view source,
                                                std::string_view target) {
  const size_t n = source.size();
  const size_t m = target.size();
  if (n != 0 && m > kDpReferenceMaxCells / n) {
    return absl::ResourceExhaustedError(
        absl::StrCat("reference alignment limited to ", kDpReferenceMaxCells,
                     " cells; got ", n, " x ", m));
  }
  // suffix[i][j] = distance(source[i..], target[j..])
  const size_t width = m + 1;
  std::vector<size_t> suffix((n + 1) * width);
  auto at = [&](size_t i, size_t j) -> size_t& { return suffix[i * width + j]; };
  for (size_t j = 0; j <= m; ++j) at(n, j) = m - j;
  for (size_t i = n; i-- > 0;) {
    at(i, m) = n - i;
    for (size_t j = m; j-- > 0;) {
      at(i, j) = std::min({at(i + 1, j + 1) + (source[i] != target[j] ? 1 : 0),
                           at(i + 1, j) + 1, at(i, j + 1) + 1});
    }
  }

  AlignmentTrace trace;
  trace.source_len = n;
  trace.target_len = m;
  size_t i = 0;
  size_t j = 0;
  while (i < n || j < m) {
    const size_t here = at(i, j);
    if (i < n && j < m) {
      const bool same = source[i] == target[j];
      if (at(i + 1, j + 1) + (same ? 0 : 1) == here) {
        trace.ops.push_back({same ? AlignmentOpKind::kMatch
                                  : AlignmentOpKind::kSubstitute,
                             i, j});
        ++i;
        ++j;
        continue;
      }
    }
    if (i < n && at(i + 1, j) + 1 == here) {
      trace.ops.push_back({AlignmentOpKind::kDelete, i, j});
      ++i;
      continue;
    }
    trace.ops.push_back({AlignmentOpKind::kInsert, i, j});
    ++j;
  }
  return trace;
}

absl::Status ValidateTrace(const AlignmentTrace& trace,
                           std::string_view source, std::string_view target) {
  if (trace.source_len != source.size() || trace.target_len != target.size()) {
    return absl::InvalidArgumentError("trace lengths do not match inputs");
  }
  size_t i = 0;
  size_t j = 0;
  for (size_t k = 0; k < trace.ops.size(); ++k) {
    const AlignmentOp& op = trace.ops[k];
    if (op.source_offset != i || op.target_offset != j) {
      return absl::InvalidArgumentError(
          absl::StrCat("op ", k, " at (", op.source_offset, ",",
                       op.target_offset, "), expected (", i, ",", j, ")"));
    }
    if (op.ConsumesSource() && i >= source.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("op ", k, " runs past end of source"));
    }
    if (op.ConsumesTarget() && j >= target.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("op ", k, " runs past end of target"));
    }
    if (op.kind == AlignmentOpKind::kMatch && source[i] != target[j]) {
      return absl::InvalidArgumentError(
          absl::StrCat("op ", k, " is a match over differing bytes"));
    }
    if (op.kind == AlignmentOpKind::kSubstitute && source[i] == target[j]) {
      return absl::InvalidArgumentError(
          absl::StrCat("op ", k, " substitutes identical bytes"));
    }
    if (op.ConsumesSource()) ++i;
    if (op.ConsumesTarget()) ++j;
  }
  if (i != source.size() || j != target.size()) {
    return absl::InvalidArgumentError("trace does not consume both inputs");
  }
  return absl::OkStatus();
}

}  // namespace crashrefine
