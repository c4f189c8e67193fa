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

#include "crashrefine/minimizer.h"

#include <signal.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "crashrefine/alignment.h"
#include "crashrefine/edit_model.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace crashrefine {
namespace {

using std::chrono::milliseconds;
using testing::ContainsBug;
using testing::FixtureTarget;
using testing::PredicateOracle;

const ByteInput kHeaderCrash("HxEjunkADER payBUGload");
const ByteInput kHeaderPass("HEADER payload");

Edit Deletion(size_t offset, std::string removed) {
  return *Edit::Create(offset, std::move(removed), "");
}

TEST(RefineCrash, HeaderFixtureEndToEnd) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  absl::StatusOr<MinimizationTrace> trace =
      RefineCrash(oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{});
  ASSERT_TRUE(trace.ok()) << trace.status();
  EXPECT_EQ(trace->final_input, ByteInput("HEADER payBUGload"));
  EXPECT_EQ(trace->initial_distance, 8u);
  EXPECT_EQ(trace->final_distance(), 3u);
  EXPECT_EQ(trace->stop_reason, StopReason::kConverged);
  EXPECT_FALSE(trace->truncated());
  EXPECT_EQ(trace->reference_fingerprint,
            (CrashFingerprint{SIGSEGV, std::nullopt, std::nullopt}));

  const std::vector<IterationRecord> expected = {
      {0, 8, 3, 2, Deletion(3, "junk"), 4, 3},
      {1, 4, 2, 1, Deletion(1, "x"), 3, 2},
      {2, 3, 1, 0, std::nullopt, 3, 1},
  };
  EXPECT_EQ(trace->iterations, expected);
  EXPECT_EQ(trace->baseline_executions, 3u);
  EXPECT_EQ(trace->total_executions, 9u);
  EXPECT_EQ(trace->initial_edits.count, 3u);
  EXPECT_EQ(trace->initial_edits.total_cost, 8u);

  EXPECT_TRUE(SameCrash(oracle.Run(trace->final_input),
                        oracle.Run(kHeaderCrash)));
}

// Every subset of the initial edit set, applied at once: the closest
// crashing result is at distance 3, the one the greedy loop reaches.
TEST(RefineCrash, HeaderFixtureMatchesSubsetSearch) {
  const EditSet set = GetEdits(kHeaderCrash, kHeaderPass);
  ASSERT_EQ(set.size(), 3u);
  size_t best = Levenshtein(kHeaderCrash, kHeaderPass);
  std::string best_input = kHeaderCrash.str();
  for (unsigned mask = 0; mask < (1u << set.size()); ++mask) {
    ByteInput candidate = kHeaderCrash;
    for (size_t k = set.size(); k-- > 0;) {
      if (mask & (1u << k)) candidate = *EditApply(candidate, set.edits[k]);
    }
    if (!ContainsBug(candidate.view())) continue;
    const size_t d = Levenshtein(candidate, kHeaderPass);
    if (d < best) {
      best = d;
      best_input = candidate.str();
    }
  }
  EXPECT_EQ(best, 3u);
  EXPECT_EQ(best_input, "HEADER payBUGload");
}

TEST(RefineCrash, OnlyEditRemovesTrigger) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  const ByteInput crashing("xxBUGxx");
  absl::StatusOr<MinimizationTrace> trace =
      RefineCrash(oracle, crashing, ByteInput("xxUGxx"), MinimizeOptions{});
  ASSERT_TRUE(trace.ok()) << trace.status();
  ASSERT_EQ(trace->iterations.size(), 1u);
  EXPECT_FALSE(trace->iterations[0].chosen_edit.has_value());
  EXPECT_EQ(trace->iterations[0].executions, 1u);
  EXPECT_EQ(trace->final_input, crashing);
  EXPECT_EQ(trace->final_distance(), 1u);
}

TEST(RefineCrash, FixedPoint) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  const ByteInput refined("HEADER payBUGload");
  absl::StatusOr<MinimizationTrace> trace =
      RefineCrash(oracle, refined, kHeaderPass, MinimizeOptions{});
  ASSERT_TRUE(trace.ok());
  EXPECT_EQ(trace->final_input, refined);
  for (const IterationRecord& r : trace->iterations) {
    EXPECT_FALSE(r.chosen_edit.has_value());
  }
}

TEST(RefineCrash, PreconditionErrors) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  EXPECT_EQ(RefineCrash(oracle, kHeaderPass, kHeaderPass, MinimizeOptions{})
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(RefineCrash(oracle, kHeaderCrash, ByteInput("BUG"), MinimizeOptions{})
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(RefineCrash, NondeterministicTargetIsAborted) {
  const TargetOracle oracle(FixtureTarget("nondet_crash", true,
                                          milliseconds(2000), "NONDET-[0-9]+"));
  EXPECT_EQ(RefineCrash(oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{})
                .status()
                .code(),
            absl::StatusCode::kAborted);
}

TEST(RefineCrash, HangingCandidateIsRejected) {
  // Dropping "KEEP" turns the crash into a hang; that edit must not be taken.
  const TargetOracle oracle(
      FixtureTarget("crash_or_hang", true, milliseconds(300)));
  absl::StatusOr<MinimizationTrace> trace =
      RefineCrash(oracle, ByteInput("HxEADER KEEPpayBUGload"), kHeaderPass,
              MinimizeOptions{.workers = 2});
  ASSERT_TRUE(trace.ok()) << trace.status();
  EXPECT_EQ(trace->final_input, ByteInput("HEADER KEEPpayBUGload"));
  EXPECT_EQ(trace->stop_reason, StopReason::kConverged);
  ASSERT_EQ(trace->iterations.size(), 2u);
  EXPECT_EQ(trace->iterations[1].edits_considered, 2u);
  EXPECT_EQ(trace->iterations[1].edits_crash_preserving, 0u);
}

TEST(RefineCrash, ExecutionBudgetTruncates) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  absl::StatusOr<MinimizationTrace> trace = RefineCrash(
      oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{.max_executions = 1});
  ASSERT_TRUE(trace.ok());
  EXPECT_EQ(trace->stop_reason, StopReason::kExecutionBudget);
  EXPECT_TRUE(trace->truncated());
  // Only the first candidate (drop "x") fits in the budget.
  EXPECT_EQ(trace->final_input, ByteInput("HEjunkADER payBUGload"));
  EXPECT_EQ(trace->final_distance(), 7u);
  EXPECT_EQ(trace->total_executions, trace->baseline_executions + 1);
}

TEST(RefineCrash, WallBudgetTruncates) {
  const PredicateOracle oracle([](std::string_view s) {
    std::this_thread::sleep_for(milliseconds(20));
    return ContainsBug(s);
  });
  absl::StatusOr<MinimizationTrace> trace =
      RefineCrash(oracle, kHeaderCrash, kHeaderPass,
              MinimizeOptions{.max_wall_time = milliseconds(1)});
  ASSERT_TRUE(trace.ok());
  EXPECT_EQ(trace->stop_reason, StopReason::kWallBudget);
  EXPECT_TRUE(ContainsBug(trace->final_input.view()));
}

TEST(RefineCrash, CancelFlagInterrupts) {
  const PredicateOracle oracle(ContainsBug);
  std::atomic<bool> cancel{true};
  absl::StatusOr<MinimizationTrace> trace = RefineCrash(
      oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{.cancel = &cancel});
  ASSERT_TRUE(trace.ok());
  EXPECT_EQ(trace->stop_reason, StopReason::kInterrupted);
  EXPECT_EQ(trace->final_input, kHeaderCrash);
}

TEST(RefineCrash, ObserverSeesEveryIteration) {
  const PredicateOracle oracle(ContainsBug);
  std::vector<IterationRecord> seen;
  absl::StatusOr<MinimizationTrace> trace =
      RefineCrash(oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{},
              [&](const IterationRecord& r) { seen.push_back(r); });
  ASSERT_TRUE(trace.ok());
  EXPECT_EQ(seen, trace->iterations);
}

TEST(RefineCrash, WorkerCountDoesNotChangeResult) {
  const TargetOracle oracle(FixtureTarget("crash_on_substring"));
  absl::StatusOr<MinimizationTrace> reference =
      RefineCrash(oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{.workers = 1});
  ASSERT_TRUE(reference.ok());
  for (size_t workers : {4u, 8u}) {
    absl::StatusOr<MinimizationTrace> t = RefineCrash(
        oracle, kHeaderCrash, kHeaderPass, MinimizeOptions{.workers = workers});
    ASSERT_TRUE(t.ok());
    EXPECT_EQ(t->final_input, reference->final_input);
    EXPECT_EQ(t->iterations, reference->iterations);
    EXPECT_EQ(t->total_executions, reference->total_executions);
  }
}

// Random pairs where the crash needs "BUG" and the passing input lacks it.
TEST(RefineCrashProperties, InvariantsOnRandomPairs) {
  std::mt19937_64 rng(21);
  const PredicateOracle oracle(ContainsBug);
  for (int i = 0; i < 300; ++i) {
    auto [c, p] = testing::RandomPair(rng, 40);
    c.insert(rng() % (c.size() + 1), "BUG");
    while (ContainsBug(p)) p.erase(p.find("BUG"), 1);
    const ByteInput crashing(c);
    const ByteInput passing(p);
    absl::StatusOr<MinimizationTrace> t = RefineCrash(
        oracle, crashing, passing, MinimizeOptions{.workers = 1 + rng() % 4});
    ASSERT_TRUE(t.ok()) << t.status();
    const MinimizationTrace& trace = *t;
    ASSERT_FALSE(trace.iterations.empty());
    EXPECT_FALSE(trace.iterations.back().chosen_edit.has_value());
    EXPECT_TRUE(ContainsBug(trace.final_input.view()));
    EXPECT_EQ(trace.final_distance(), Levenshtein(trace.final_input, passing));
    EXPECT_LE(trace.final_distance(), trace.initial_distance);
    EXPECT_EQ(trace.final_distance() == trace.initial_distance,
              trace.iterations.size() == 1);
    size_t execs = trace.baseline_executions;
    for (size_t k = 0; k < trace.iterations.size(); ++k) {
      const IterationRecord& r = trace.iterations[k];
      execs += r.executions;
      EXPECT_EQ(r.executions, r.edits_considered);
      if (k > 0) {
        EXPECT_LT(r.distance_before, trace.iterations[k - 1].distance_before);
      }
      if (r.chosen_edit) {
        EXPECT_EQ(r.distance_after, r.distance_before - r.chosen_edit->cost());
      }
    }
    EXPECT_EQ(execs, trace.total_executions);

    absl::StatusOr<MinimizationTrace> again =
        RefineCrash(oracle, trace.final_input, passing, MinimizeOptions{});
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(again->final_input, trace.final_input);
    EXPECT_EQ(again->iterations.size(), 1u);
  }
}

TEST(RefineCrashProperties, ParallelMatchesSequential) {
  std::mt19937_64 rng(22);
  const PredicateOracle oracle([](std::string_view s) {
    return s.find('B') != std::string_view::npos &&
           s.find('U') != std::string_view::npos;
  });
  for (int i = 0; i < 100; ++i) {
    auto [c, p] = testing::RandomPair(rng, 48);
    c += "BU";
    std::erase(p, 'B');
    absl::StatusOr<MinimizationTrace> seq =
        RefineCrash(oracle, ByteInput(c), ByteInput(p), MinimizeOptions{});
    absl::StatusOr<MinimizationTrace> par = RefineCrash(
        oracle, ByteInput(c), ByteInput(p), MinimizeOptions{.workers = 6});
    ASSERT_TRUE(seq.ok() && par.ok());
    EXPECT_EQ(seq->final_input, par->final_input);
    EXPECT_EQ(seq->iterations, par->iterations);
  }
}

TEST(DistanceReport, Examples) {
  const DistanceReport same =
      MakeDistanceReport(kHeaderPass, kHeaderCrash, kHeaderCrash);
  ASSERT_TRUE(same.ratio.has_value());
  EXPECT_DOUBLE_EQ(*same.ratio, 1.0);

  const DistanceReport zero =
      MakeDistanceReport(kHeaderPass, kHeaderCrash, kHeaderPass);
  EXPECT_EQ(zero.dist_refined, 0u);

  const DistanceReport fixture = MakeDistanceReport(
      kHeaderPass, kHeaderCrash, ByteInput("HEADER payBUGload"));
  EXPECT_EQ(fixture.dist_original, 8u);
  EXPECT_EQ(fixture.dist_refined, 3u);
  EXPECT_DOUBLE_EQ(*fixture.ratio, 0.375);
  EXPECT_EQ(fixture.passing_size, 14u);
  EXPECT_EQ(fixture.original_size, 22u);
  EXPECT_EQ(fixture.refined_size, 17u);

  const DistanceReport undefined =
      MakeDistanceReport(kHeaderPass, kHeaderPass, kHeaderPass);
  EXPECT_FALSE(undefined.ratio.has_value());
}

}  // namespace
}  // namespace crashrefine
