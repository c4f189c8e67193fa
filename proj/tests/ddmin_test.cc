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

#include <random>
#include <set>
#include <string>

#include "crashrefine/minimizer.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace crashrefine {
namespace {

using testing::ContainsBug;
using testing::FixtureTarget;
using testing::PredicateOracle;

bool IsSubsequence(std::string_view small, std::string_view big) {
  size_t j = 0;
  for (char c : big) {
    if (j < small.size() && small[j] == c) ++j;
  }
  return j == small.size();
}

// Every substring of "aaaaBUGbbbb" that crashes contains "BUG", so "BUG" is
// the unique shortest crashing input reachable by deletion.
TEST(DdminOracle, BugIsUniqueMinimalSubstring) {
  const std::string input = "aaaaBUGbbbb";
  std::set<std::string> shortest;
  size_t best = input.size() + 1;
  for (size_t i = 0; i < input.size(); ++i) {
    for (size_t n = 1; i + n <= input.size(); ++n) {
      const std::string sub = input.substr(i, n);
      if (!ContainsBug(sub)) continue;
      if (n < best) shortest.clear(), best = n;
      if (n == best) shortest.insert(sub);
    }
  }
  EXPECT_EQ(shortest, (std::set<std::string>{"BUG"}));
}

TEST(Ddmin, IsolatesSubstring) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  absl::StatusOr<DdminResult> r =
      Ddmin(oracle, ByteInput("aaaaBUGbbbb"), MinimizeOptions{});
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->output, ByteInput("BUG"));
  EXPECT_EQ(r->stop_reason, StopReason::kConverged);
  EXPECT_TRUE(IsOneMinimal(oracle, r->output, r->fingerprint));
}

TEST(Ddmin, KeepsBothDistantBytes) {
  const TargetOracle oracle(FixtureTarget("crash_two_bytes"));
  absl::StatusOr<DdminResult> r =
      Ddmin(oracle, ByteInput("X......Y"), MinimizeOptions{});
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->output, ByteInput("XY"));
}

TEST(Ddmin, SingleByteIsUnchanged) {
  const PredicateOracle oracle(
      [](std::string_view s) { return s.find('B') != std::string_view::npos; });
  absl::StatusOr<DdminResult> r = Ddmin(oracle, ByteInput("B"), MinimizeOptions{});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->output, ByteInput("B"));
}

TEST(Ddmin, NonCrashingInputIsRejected) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  EXPECT_EQ(Ddmin(oracle, ByteInput("fine"), MinimizeOptions{}).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(Ddmin, ExecutionBudgetTruncates) {
  const PredicateOracle oracle(ContainsBug);
  absl::StatusOr<DdminResult> r =
      Ddmin(oracle, ByteInput(std::string(200, 'a') + "BUG"),
            MinimizeOptions{.max_executions = 3});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->stop_reason, StopReason::kExecutionBudget);
  EXPECT_TRUE(ContainsBug(r->output.view()));
  EXPECT_LE(r->executions, 2u + 3u);
}

TEST(IsOneMinimal, DetectsRemovableByte) {
  const PredicateOracle oracle(ContainsBug);
  const CrashFingerprint fp{SIGSEGV, std::nullopt, std::nullopt};
  EXPECT_TRUE(IsOneMinimal(oracle, ByteInput("BUG"), fp));
  EXPECT_FALSE(IsOneMinimal(oracle, ByteInput("aBUG"), fp));
}

TEST(DdminProperties, ResultCrashesAndIsOneMinimal) {
  std::mt19937_64 rng(31);
  const PredicateOracle oracle([](std::string_view s) {
    return s.find('X') != std::string_view::npos &&
           s.find("YZ") != std::string_view::npos;
  });
  const CrashFingerprint fp{SIGSEGV, std::nullopt, std::nullopt};
  for (int i = 0; i < 200; ++i) {
    std::string input = testing::RandomBytes(rng, 60, 6, 'U');
    input.insert(rng() % (input.size() + 1), "X");
    input.insert(rng() % (input.size() + 1), "YZ");
    absl::StatusOr<DdminResult> r =
        Ddmin(oracle, ByteInput(input), MinimizeOptions{});
    ASSERT_TRUE(r.ok()) << r.status();
    EXPECT_TRUE(IsSubsequence(r->output.view(), input));
    EXPECT_TRUE(IsOneMinimal(oracle, r->output, fp)) << r->output.str();
    EXPECT_EQ(r->output.size(), 3u) << r->output.str();
  }
}

}  // namespace
}  // namespace crashrefine
