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

#include <unistd.h>

#include <filesystem>
#include <map>
#include <fstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "property_checks.h"

namespace crashrefine::sbfl {
namespace {

CoverageSpectrum TwoTestSpectrum() {
  CoverageSpectrum s;
  s.tests.push_back({"fail", Verdict::kFail, {"A", "B"}});
  s.tests.push_back({"pass", Verdict::kPass, {"B"}});
  s.elements = {"A", "B"};
  return s;
}

const RankedElement& Find(const SuspiciousnessRanking& r, std::string_view id) {
  for (const RankedElement& e : r.entries) {
    if (e.id == id) return e;
  }
  ADD_FAILURE() << "missing " << id;
  return r.entries.front();
}

TEST(Op2Score, Examples) {
  EXPECT_DOUBLE_EQ(*Op2Score(1, 0, 1, 4), 1.0);
  EXPECT_DOUBLE_EQ(*Op2Score(0, 0, 1, 4), 0.0);
  EXPECT_DOUBLE_EQ(*Op2Score(1, 4, 1, 4), 0.2);
}

TEST(Op2Score, DomainErrors) {
  EXPECT_FALSE(Op2Score(0, 0, 0, 3).ok());
  EXPECT_FALSE(Op2Score(2, 0, 1, 3).ok());
  EXPECT_FALSE(Op2Score(1, 4, 1, 3).ok());
}

TEST(Op2Score, MonotonicityGrid) {
  const auto failures = testing::CheckOp2Monotonicity();
  EXPECT_TRUE(failures.empty()) << failures.front();
}

TEST(Rank, TwoTestSpectrum) {
  absl::StatusOr<SuspiciousnessRanking> r =
      Rank(TwoTestSpectrum(), Granularity::kStatement);
  ASSERT_TRUE(r.ok()) << r.status();
  ASSERT_EQ(r->entries.size(), 2u);
  EXPECT_EQ(r->entries[0].id, "A");
  EXPECT_DOUBLE_EQ(r->entries[0].score, 1.0);
  EXPECT_EQ(r->entries[0].best_rank, 1u);
  EXPECT_EQ(r->entries[1].id, "B");
  EXPECT_DOUBLE_EQ(r->entries[1].score, 0.5);
  EXPECT_EQ(r->entries[1].best_rank, 2u);
  EXPECT_EQ(r->formula, "op2");
}

TEST(Rank, TotalTie) {
  CoverageSpectrum s;
  s.elements = {"a:1", "a:2", "a:3"};
  s.tests.push_back({"f", Verdict::kFail, s.elements});
  s.tests.push_back({"p", Verdict::kPass, s.elements});
  absl::StatusOr<SuspiciousnessRanking> r = Rank(s, Granularity::kStatement);
  ASSERT_TRUE(r.ok());
  for (const RankedElement& e : r->entries) {
    EXPECT_EQ(e.best_rank, 1u);
    EXPECT_EQ(e.worst_rank, 3u);
  }
}

TEST(Rank, FunctionLevelTakesMax) {
  CoverageSpectrum s = TwoTestSpectrum();
  s.function_map = std::map<std::string, std::string>{{"A", "f1"}, {"B", "f2"}};
  absl::StatusOr<SuspiciousnessRanking> r = Rank(s, Granularity::kFunction);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(Find(*r, "f1").best_rank, 1u);
  EXPECT_EQ(Find(*r, "f2").best_rank, 2u);

  // A lower-scored member does not change the function's score.
  s.elements.insert("C");
  s.tests[1].covered.insert("C");
  (*s.function_map)["C"] = "f1";
  absl::StatusOr<SuspiciousnessRanking> r2 = Rank(s, Granularity::kFunction);
  ASSERT_TRUE(r2.ok());
  EXPECT_DOUBLE_EQ(Find(*r2, "f1").score, 1.0);
}

TEST(Rank, FunctionLevelNeedsCompleteMap) {
  CoverageSpectrum s = TwoTestSpectrum();
  EXPECT_FALSE(Rank(s, Granularity::kFunction).ok());
  s.function_map = std::map<std::string, std::string>{{"A", "f1"}};
  absl::StatusOr<SuspiciousnessRanking> r = Rank(s, Granularity::kFunction);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find("B"), std::string::npos);
}

TEST(Rank, PerfectElementRanksFirst) {
  CoverageSpectrum s;
  s.elements = {"x:1", "x:2", "x:3"};
  s.tests.push_back({"f1", Verdict::kFail, {"x:1", "x:2"}});
  s.tests.push_back({"f2", Verdict::kFail, {"x:1", "x:3"}});
  s.tests.push_back({"p1", Verdict::kPass, {"x:2", "x:3"}});
  absl::StatusOr<SuspiciousnessRanking> r = Rank(s, Granularity::kStatement);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(Find(*r, "x:1").best_rank, 1u);
  EXPECT_EQ(Find(*r, "x:1").worst_rank, 1u);
}

TEST(CoverageSpectrum, Validation) {
  CoverageSpectrum s = TwoTestSpectrum();
  s.tests[1].verdict = Verdict::kFail;
  EXPECT_FALSE(s.Validate().ok());
  s = TwoTestSpectrum();
  s.tests[1].id = "fail";
  EXPECT_FALSE(s.Validate().ok());
  s = TwoTestSpectrum();
  s.tests[0].covered.insert("Z");
  EXPECT_FALSE(s.Validate().ok());
}

TEST(SbflProperties, AgreesWithNaiveRecount) {
  const auto failures = testing::CheckSbflAgainstNaive(1000, 41);
  EXPECT_TRUE(failures.empty()) << failures.front();
}

TEST(CompareSetups, IdenticalSetupsGiveIdenticalRanks) {
  CoverageSpectrum s = TwoTestSpectrum();
  s.function_map = std::map<std::string, std::string>{{"A", "f1"}, {"B", "f2"}};
  const std::vector<sbfl::Setup> setups = {{"fuzz", s}, {"ddmin", s}, {"refined", s}};
  absl::StatusOr<ComparisonTable> t = CompareSetups(setups, {"B"});
  ASSERT_TRUE(t.ok());
  ASSERT_EQ(t->rows.size(), 3u);
  for (const SetupRanks& row : t->rows) {
    EXPECT_EQ(row.statement_rank, 2u);
    EXPECT_EQ(row.function_rank, 2u);
  }
}

TEST(CompareSetups, ReducedCoverageImprovesRank) {
  const std::vector<sbfl::Setup> setups = testing::ReducedCoverageSetups();
  absl::StatusOr<ComparisonTable> t =
      CompareSetups(setups, testing::ReducedCoverageBuggy());
  ASSERT_TRUE(t.ok()) << t.status();
  ASSERT_EQ(t->rows.size(), 3u);
  EXPECT_EQ(t->rows[0].statement_rank, 5u);
  EXPECT_EQ(t->rows[1].statement_rank, 3u);
  EXPECT_EQ(t->rows[2].statement_rank, 2u);
  EXPECT_EQ(t->rows[0].function_rank, 2u);
  EXPECT_EQ(t->rows[1].function_rank, 2u);
  EXPECT_EQ(t->rows[2].function_rank, 2u);
}

TEST(CompareSetups, MissingBuggyElementIsUnranked) {
  const std::vector<sbfl::Setup> setups = {{"only", TwoTestSpectrum()}};
  absl::StatusOr<ComparisonTable> t = CompareSetups(setups, {"nowhere:1"});
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->rows[0].statement_rank, 3u);
  EXPECT_FALSE(t->rows[0].function_rank.has_value());
  EXPECT_FALSE(CompareSetups(setups, {}).ok());
}

TEST(Reports, TsvAndJson) {
  const SuspiciousnessRanking r = *Rank(TwoTestSpectrum(), Granularity::kStatement);
  EXPECT_EQ(RankingToTsv(r, 20),
            "rank\tworst_rank\tscore\tstatement\n"
            "1\t1\t1.000000\tA\n"
            "2\t2\t0.500000\tB\n");
  EXPECT_EQ(RankingToTsv(r, 1).find("B"), std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(RankingToJson(r, 20));
  EXPECT_EQ(j["entries"][0]["id"], "A");
  EXPECT_EQ(j["entries"][1]["bestRank"], 2);

  ComparisonTable table;
  table.rows.push_back({"fuzz", 5, 2});
  table.rows.push_back({"refined", 2, std::nullopt});
  EXPECT_EQ(ComparisonToTsv(table),
            "setup\tstatement\tfunction\nfuzz\t5\t2\nrefined\t2\t-\n");
  const nlohmann::json cj = nlohmann::json::parse(ComparisonToJson(table));
  EXPECT_EQ(cj["rows"][0]["function"], 2);
  EXPECT_TRUE(cj["rows"][1]["function"].is_null());
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("crashrefine-sbfl-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_ / "cov");
    Write("cov/fail.txt", "A\nB\n");
    Write("cov/pass.txt", "B\n\n");
    Write("functions.tsv", "A\tf1\nB\tf2\nC\tf3\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void Write(const std::string& rel, const std::string& text) {
    std::ofstream(dir_ / rel) << text;
  }

  std::filesystem::path dir_;
};

TEST_F(ManifestTest, LoadsRelativePaths) {
  Write("m.json", R"({"tests": [
      {"id": "f", "verdict": "fail", "coverageFile": "cov/fail.txt"},
      {"id": "p", "verdict": "pass", "coverageFile": "cov/pass.txt"}],
    "functionMap": "functions.tsv"})");
  absl::StatusOr<CoverageSpectrum> s = LoadSpectrumManifest(dir_ / "m.json");
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->tests.size(), 2u);
  EXPECT_EQ(s->elements, (std::set<std::string>{"A", "B", "C"}));
  EXPECT_EQ(s->function_map->at("C"), "f3");
  EXPECT_EQ(Find(*Rank(*s, Granularity::kStatement), "A").best_rank, 1u);
}

TEST_F(ManifestTest, SchemaErrorsNameTheField) {
  Write("bad.json", R"({"tests": [
      {"id": "f", "verdict": "fail", "coverageFile": "cov/fail.txt"},
      {"id": "p", "verdict": "maybe", "coverageFile": "cov/pass.txt"}]})");
  absl::StatusOr<CoverageSpectrum> s = LoadSpectrumManifest(dir_ / "bad.json");
  ASSERT_FALSE(s.ok());
  EXPECT_EQ(s.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(s.status().message().find("tests[1].verdict"), std::string::npos);

  Write("nofile.json", R"({"tests": [
      {"id": "f", "verdict": "fail", "coverageFile": "cov/none.txt"}]})");
  s = LoadSpectrumManifest(dir_ / "nofile.json");
  ASSERT_FALSE(s.ok());
  EXPECT_NE(s.status().message().find("tests[0].coverageFile"),
            std::string::npos);

  Write("notjson.json", "{");
  EXPECT_EQ(LoadSpectrumManifest(dir_ / "notjson.json").status().code(),
            absl::StatusCode::kInvalidArgument);
  Write("noarray.json", R"({"tests": 3})");
  EXPECT_NE(LoadSpectrumManifest(dir_ / "noarray.json")
                .status()
                .message()
                .find("tests"),
            std::string::npos);
}

TEST_F(ManifestTest, ElementList) {
  Write("buggy.txt", "A\n\n  B  \n");
  EXPECT_EQ(*LoadElementList(dir_ / "buggy.txt"),
            (std::set<std::string>{"A", "B"}));
}

}  // namespace
}  // namespace crashrefine::sbfl
