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

#include <signal.h>
#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "crashrefine/file_util.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace crashrefine {
namespace {

using nlohmann::json;

MinimizationTrace SampleTrace() {
  MinimizationTrace trace;
  trace.iterations.push_back(
      {0, 8, 3, 2, *Edit::Create(3, "junk", ""), 4, 3});
  trace.iterations.push_back({1, 4, 1, 0, std::nullopt, 4, 1});
  trace.baseline_executions = 3;
  trace.total_executions = 7;
  trace.wall_millis = 12;
  trace.final_input = ByteInput(std::string("A\0\xff", 3));
  trace.reference_fingerprint = {SIGSEGV, std::nullopt, std::nullopt};
  trace.initial_distance = 8;
  trace.initial_edits = {3, 8, 4};
  return trace;
}

TEST(TraceLog, IterationRecordFields) {
  const json j = json::parse(IterationToJson(SampleTrace().iterations[0]));
  EXPECT_EQ(j["iterationIndex"], 0);
  EXPECT_EQ(j["distanceBefore"], 8);
  EXPECT_EQ(j["editsConsidered"], 3);
  EXPECT_EQ(j["editsCrashPreserving"], 2);
  EXPECT_EQ(j["distanceAfter"], 4);
  EXPECT_EQ(j["executions"], 3);
  EXPECT_EQ(j["chosenEdit"],
            json({{"kind", "delete"},
                  {"offset", 3},
                  {"removed", "6a756e6b"},
                  {"inserted", ""},
                  {"cost", 4}}));
  EXPECT_TRUE(
      json::parse(IterationToJson(SampleTrace().iterations[1]))["chosenEdit"]
          .is_null());
}

TEST(TraceLog, FieldOrderIsStable) {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(
      IterationToJson(SampleTrace().iterations[0]));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{
                      "iterationIndex", "distanceBefore", "editsConsidered",
                      "editsCrashPreserving", "chosenEdit", "distanceAfter",
                      "executions"}));
}

TEST(TraceLog, SummaryFields) {
  const json j = json::parse(SummaryToJson(SampleTrace()));
  EXPECT_EQ(j["totalExecutions"], 7);
  EXPECT_EQ(j["baselineExecutions"], 3);
  EXPECT_EQ(j["wallMillis"], 12);
  EXPECT_EQ(j["finalInput"], "4100ff");
  EXPECT_EQ(j["referenceFingerprint"]["signal"], SIGSEGV);
  EXPECT_EQ(j["referenceFingerprint"]["signalName"], "SIGSEGV");
  EXPECT_TRUE(j["referenceFingerprint"]["matchedToken"].is_null());
  EXPECT_TRUE(j["referenceFingerprint"]["exitCode"].is_null());
  EXPECT_EQ(j["initialDistance"], 8);
  EXPECT_EQ(j["finalDistance"], 4);
  EXPECT_EQ(j["iterations"], 2);
  EXPECT_EQ(j["stopReason"], "converged");
  EXPECT_EQ(j["truncated"], false);
  EXPECT_EQ(j["initialEdits"],
            json({{"count", 3}, {"totalCost", 8}, {"maxCost", 4}}));
}

TEST(TraceLog, JsonLinesEndWithSummary) {
  const std::string text = TraceToJsonLines(SampleTrace());
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  std::istringstream in(text);
  std::vector<json> lines;
  for (std::string line; std::getline(in, line);) {
    lines.push_back(json::parse(line));
  }
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_TRUE(lines[0].contains("iterationIndex"));
  EXPECT_TRUE(lines[2].contains("totalExecutions"));
}

TEST(ByteInputHex, Roundtrip) {
  const ByteInput input(std::string("\x00\x01\xab\xff", 4));
  EXPECT_EQ(ToHex(input), "0001abff");
  std::string decoded;
  ASSERT_TRUE(FromHex("0001ABff", &decoded));
  EXPECT_EQ(ByteInput(decoded), input);
  EXPECT_FALSE(FromHex("abc", &decoded));
  EXPECT_FALSE(FromHex("zz", &decoded));
}

class FileUtilTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("crashrefine-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

TEST_F(FileUtilTest, AtomicWriteAndRead) {
  const auto path = dir_ / "out.bin";
  const std::string bytes("a\0b\xff", 4);
  ASSERT_TRUE(WriteFileAtomically(path, bytes).ok());
  ASSERT_TRUE(WriteFileAtomically(path, bytes + "more").ok());
  absl::StatusOr<ByteInput> read = ReadInputFile(path);
  ASSERT_TRUE(read.ok());
  EXPECT_EQ(read->str(), bytes + "more");
  // No temp files left next to the output.
  absl::StatusOr<std::vector<std::filesystem::path>> files =
      ListRegularFiles(dir_);
  ASSERT_TRUE(files.ok());
  EXPECT_EQ(*files, std::vector<std::filesystem::path>{path});
}

TEST_F(FileUtilTest, MissingFile) {
  EXPECT_EQ(ReadInputFile(dir_ / "nope").status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_FALSE(WriteFileAtomically(dir_ / "no" / "dir", "x").ok());
}

TEST_F(FileUtilTest, ListIsSortedAndSkipsDirectories) {
  ASSERT_TRUE(WriteFileAtomically(dir_ / "b", "").ok());
  ASSERT_TRUE(WriteFileAtomically(dir_ / "a", "").ok());
  std::filesystem::create_directory(dir_ / "sub");
  EXPECT_EQ(*ListRegularFiles(dir_),
            (std::vector<std::filesystem::path>{dir_ / "a", dir_ / "b"}));
}

TEST_F(FileUtilTest, SameFile) {
  ASSERT_TRUE(WriteFileAtomically(dir_ / "a", "").ok());
  EXPECT_TRUE(SameFile(dir_ / "a", dir_ / "." / "a"));
  EXPECT_TRUE(SameFile(dir_ / "new", dir_ / "sub" / ".." / "new"));
  EXPECT_FALSE(SameFile(dir_ / "a", dir_ / "b"));
}

}  // namespace
}  // namespace crashrefine
