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

#include "crashrefine/sbfl.h"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace crashrefine::sbfl {

absl::Status CoverageSpectrum::Validate() const {
  std::set<std::string_view> ids;
  size_t fails = 0;
  for (const TestCoverage& t : tests) {
    if (!ids.insert(t.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate test id: ", t.id));
    }
    if (t.verdict == Verdict::kFail) ++fails;
    for (const std::string& e : t.covered) {
      if (!elements.contains(e)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "test ", t.id, " covers ", e, " which is not in the universe"));
      }
    }
  }
  if (fails == 0) {
    return absl::InvalidArgumentError("spectrum has no failing test");
  }
  if (fails == tests.size()) {
    return absl::InvalidArgumentError("spectrum has no passing test");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> Op2Score(size_t ef, size_t ep, size_t total_fail,
                                size_t total_pass) {
  if (total_fail == 0) {
    return absl::InvalidArgumentError("Op2 needs at least one failing test");
  }
  if (ef > total_fail || ep > total_pass) {
    return absl::InvalidArgumentError(
        absl::StrCat("coverage counts out of range: ef=", ef, "/", total_fail,
                     " ep=", ep, "/", total_pass));
  }
  return static_cast<double>(ef) -
         static_cast<double>(ep) / static_cast<double>(total_pass + 1);
}

std::string_view GranularityName(Granularity granularity) {
  return granularity == Granularity::kStatement ? "statement" : "function";
}

absl::StatusOr<Granularity> ParseGranularity(std::string_view name) {
  if (name == "statement") return Granularity::kStatement;
  if (name == "function") return Granularity::kFunction;
  return absl::InvalidArgumentError(
      absl::StrCat("granularity must be statement or function, got ",
                   std::string(name)));
}

size_t SuspiciousnessRanking::BestRankOf(
    const std::set<std::string>& ids) const {
  size_t best = entries.size() + 1;
  for (const RankedElement& e : entries) {
    if (ids.contains(e.id)) best = std::min(best, e.best_rank);
  }
  return best;
}

namespace {

// Sorts by score and fills in competition ranks.
void AssignRanks(std::vector<RankedElement>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const RankedElement& a, const RankedElement& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  size_t group_start = 0;
  while (group_start < entries.size()) {
    size_t group_end = group_start;
    while (group_end < entries.size() &&
           entries[group_end].score == entries[group_start].score) {
      ++group_end;
    }
    for (size_t i = group_start; i < group_end; ++i) {
      entries[i].best_rank = group_start + 1;
      entries[i].worst_rank = group_end;
    }
    group_start = group_end;
  }
}

}  // namespace

absl::StatusOr<SuspiciousnessRanking> Rank(const CoverageSpectrum& spectrum,
                                           Granularity granularity) {
  if (absl::Status s = spectrum.Validate(); !s.ok()) return s;
  if (granularity == Granularity::kFunction) {
    if (!spectrum.function_map.has_value()) {
      return absl::InvalidArgumentError(
          "function-level ranking needs a function map");
    }
    std::vector<std::string> unmapped;
    for (const std::string& e : spectrum.elements) {
      if (!spectrum.function_map->contains(e)) unmapped.push_back(e);
    }
    if (!unmapped.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("elements missing from the function map: ",
                       absl::StrJoin(unmapped, ", ")));
    }
  }

  size_t total_fail = 0;
  std::map<std::string, std::pair<size_t, size_t>> counts;  // ef, ep
  for (const std::string& e : spectrum.elements) counts[e] = {0, 0};
  for (const TestCoverage& t : spectrum.tests) {
    const bool failed = t.verdict == Verdict::kFail;
    if (failed) ++total_fail;
    for (const std::string& e : t.covered) {
      auto& [ef, ep] = counts[e];
      ++(failed ? ef : ep);
    }
  }
  const size_t total_pass = spectrum.tests.size() - total_fail;

  std::map<std::string, double> scores;
  for (const auto& [element, c] : counts) {
    absl::StatusOr<double> score =
        Op2Score(c.first, c.second, total_fail, total_pass);
    if (!score.ok()) return score.status();
    if (granularity == Granularity::kStatement) {
      scores[element] = *score;
      continue;
    }
    const std::string& function = spectrum.function_map->at(element);
    auto [it, inserted] = scores.emplace(function, *score);
    if (!inserted) it->second = std::max(it->second, *score);
  }

  SuspiciousnessRanking ranking;
  ranking.granularity = granularity;
  ranking.entries.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    ranking.entries.push_back({id, score, 0, 0});
  }
  AssignRanks(ranking.entries);
  return ranking;
}

absl::StatusOr<ComparisonTable> CompareSetups(
    std::span<const Setup> setups, const std::set<std::string>& buggy) {
  if (buggy.empty()) {
    return absl::InvalidArgumentError("no buggy elements given");
  }
  ComparisonTable table;
  for (const Setup& setup : setups) {
    SetupRanks row;
    row.setup = setup.name;
    absl::StatusOr<SuspiciousnessRanking> statements =
        Rank(setup.spectrum, Granularity::kStatement);
    if (!statements.ok()) {
      return absl::Status(statements.status().code(),
                          absl::StrCat(setup.name, ": ",
                                       statements.status().message()));
    }
    row.statement_rank = statements->BestRankOf(buggy);
    if (setup.spectrum.function_map.has_value()) {
      absl::StatusOr<SuspiciousnessRanking> functions =
          Rank(setup.spectrum, Granularity::kFunction);
      if (!functions.ok()) {
        return absl::Status(functions.status().code(),
                            absl::StrCat(setup.name, ": ",
                                         functions.status().message()));
      }
      std::set<std::string> buggy_functions;
      for (const std::string& e : buggy) {
        auto it = setup.spectrum.function_map->find(e);
        if (it != setup.spectrum.function_map->end()) {
          buggy_functions.insert(it->second);
        }
      }
      row.function_rank = functions->BestRankOf(buggy_functions);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string FormatScore(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

}  // namespace

std::string RankingToTsv(const SuspiciousnessRanking& ranking, size_t top_n) {
  std::string out = absl::StrCat("rank\tworst_rank\tscore\t",
                                 std::string(GranularityName(ranking.granularity)),
                   "\n");
  const size_t n = std::min(top_n, ranking.entries.size());
  for (size_t i = 0; i < n; ++i) {
    const RankedElement& e = ranking.entries[i];
    absl::StrAppend(&out, e.best_rank, "\t", e.worst_rank, "\t",
                    FormatScore(e.score), "\t", e.id, "\n");
  }
  return out;
}

std::string RankingToJson(const SuspiciousnessRanking& ranking, size_t top_n) {
  nlohmann::ordered_json j;
  j["formula"] = ranking.formula;
  j["granularity"] = std::string(GranularityName(ranking.granularity));
  j["size"] = ranking.entries.size();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  const size_t n = std::min(top_n, ranking.entries.size());
  for (size_t i = 0; i < n; ++i) {
    const RankedElement& e = ranking.entries[i];
    entries.push_back({{"id", e.id},
                       {"score", e.score},
                       {"bestRank", e.best_rank},
                       {"worstRank", e.worst_rank}});
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string ComparisonToTsv(const ComparisonTable& table) {
  std::string out = "setup\tstatement\tfunction\n";
  for (const SetupRanks& row : table.rows) {
    absl::StrAppend(&out, row.setup, "\t", row.statement_rank, "\t",
                    row.function_rank.has_value()
                        ? absl::StrCat(*row.function_rank)
                        : std::string("-"),
                    "\n");
  }
  return out;
}

std::string ComparisonToJson(const ComparisonTable& table) {
  nlohmann::ordered_json j;
  j["formula"] = "op2";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SetupRanks& row : table.rows) {
    rows.push_back(
        {{"setup", row.setup},
         {"statement", row.statement_rank},
         {"function", row.function_rank.has_value()
                          ? nlohmann::ordered_json(*row.function_rank)
                          : nlohmann::ordered_json(nullptr)}});
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

}  // namespace crashrefine::sbfl
