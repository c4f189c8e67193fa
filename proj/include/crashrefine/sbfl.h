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

#ifndef CRASHREFINE_SBFL_H_
#define CRASHREFINE_SBFL_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace crashrefine::sbfl {

enum class Verdict { kPass, kFail };

struct TestCoverage {
  std::string id;
  Verdict verdict = Verdict::kPass;
  std::set<std::string> covered;
};

// Per-test coverage of code elements ("path:line") with pass/fail labels.
struct CoverageSpectrum {
  std::vector<TestCoverage> tests;
  std::set<std::string> elements;
  // element -> function; required for function-level ranking.
  std::optional<std::map<std::string, std::string>> function_map;

  // Unique test ids, at least one failing and one passing test, and every
  // covered element in `elements`.
  absl::Status Validate() const;
};

// Op2: ef - ep / (total_pass + 1). Rejects ef > total_fail, ep > total_pass
// and total_fail == 0.
absl::StatusOr<double> Op2Score(size_t ef, size_t ep, size_t total_fail,
                                size_t total_pass);

enum class Granularity { kStatement, kFunction };

std::string_view GranularityName(Granularity granularity);
absl::StatusOr<Granularity> ParseGranularity(std::string_view name);

struct RankedElement {
  std::string id;
  double score = 0;
  // 1 + number of strictly higher scores.
  size_t best_rank = 0;
  // Number of scores greater than or equal to this one.
  size_t worst_rank = 0;
};

struct SuspiciousnessRanking {
  // Sorted by score descending, then id ascending.
  std::vector<RankedElement> entries;
  std::string formula = "op2";
  Granularity granularity = Granularity::kStatement;

  // Best bestRank among `ids`, or entries.size() + 1 when none is ranked.
  size_t BestRankOf(const std::set<std::string>& ids) const;
};

// Statement level scores every element. Function level scores each function
// by the maximum of its elements' scores; every element must be mapped.
absl::StatusOr<SuspiciousnessRanking> Rank(const CoverageSpectrum& spectrum,
                                           Granularity granularity);

struct Setup {
  std::string name;
  CoverageSpectrum spectrum;
};

struct SetupRanks {
  std::string setup;
  size_t statement_rank = 0;
  // Absent when the setup has no function map.
  std::optional<size_t> function_rank;
};

struct ComparisonTable {
  std::vector<SetupRanks> rows;
};

// Best rank of any buggy element (and of any function containing one) for
// each setup. Buggy elements missing from a setup count as unranked.
absl::StatusOr<ComparisonTable> CompareSetups(
    std::span<const Setup> setups, const std::set<std::string>& buggy);

std::string RankingToTsv(const SuspiciousnessRanking& ranking, size_t top_n);
std::string RankingToJson(const SuspiciousnessRanking& ranking, size_t top_n);
std::string ComparisonToTsv(const ComparisonTable& table);
std::string ComparisonToJson(const ComparisonTable& table);

// Manifest format:
//   {"tests": [{"id": "...", "verdict": "pass"|"fail",
//               "coverageFile": "relative/path"}, ...],
//    "functionMap": "relative/path"}          (optional)
// Coverage files list one element per line. Function map lines are
// "element<TAB>function". Paths are relative to the manifest. Schema errors
// are InvalidArgument and name the offending field.
absl::StatusOr<CoverageSpectrum> LoadSpectrumManifest(
    const std::filesystem::path& manifest);

// One element id per line; blank lines ignored.
absl::StatusOr<std::set<std::string>> LoadElementList(
    const std::filesystem::path& path);

}  // namespace crashrefine::sbfl

#endif  // CRASHREFINE_SBFL_H_
