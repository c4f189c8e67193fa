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

// crashrefine: refine fuzzer crashes towards a passing seed, run ddmin,
// measure distances and compare SBFL rankings.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "cli_support.h"
#include "crashrefine/alignment.h"
#include "crashrefine/file_util.h"
#include "crashrefine/minimizer.h"
#include "crashrefine/sbfl.h"
#include "crashrefine/trace_log.h"
#include "json.hpp"

namespace crashrefine::cli {
namespace {

namespace fs = std::filesystem;

struct MinimizeArgs {
  std::string target;
  std::string crash;
  std::string pass;
  std::string out;
  std::string trace;
};

struct DdminArgs {
  std::string target;
  std::string crash;
  std::string out;
};

struct DistanceArgs {
  std::vector<std::string> paths;
  bool json_only = false;
};

struct SbflArgs {
  std::string manifest;
  std::string granularity = "statement";
  size_t top = 20;
  std::string buggy;
  std::vector<std::string> compare;
  std::vector<std::string> names = {"fuzz", "ddmin", "refined"};
  std::string format = "tsv";
};

struct BatchArgs {
  std::string target;
  std::string crash;
  std::string seeds;
  std::string out_dir;
};

std::string FormatRatio(const std::optional<double>& ratio) {
  if (!ratio) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *ratio);
  return buf;
}

absl::Status CheckDistinct(const fs::path& out,
                           std::initializer_list<fs::path> inputs) {
  for (const fs::path& in : inputs) {
    if (!in.empty() && SameFile(out, in)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "output ", out.string(), " would overwrite input ", in.string()));
    }
  }
  return absl::OkStatus();
}

void LogIteration(const IterationRecord& r) {
  if (r.chosen_edit) {
    std::fprintf(stderr,
                 "iteration %zu: %zu -> %zu (%s @%zu, %zu/%zu candidates kept "
                 "the crash)\n",
                 r.iteration_index, r.distance_before, r.distance_after,
                 std::string(EditKindName(r.chosen_edit->kind())).c_str(),
                 r.chosen_edit->offset(), r.edits_crash_preserving,
                 r.edits_considered);
  } else {
    std::fprintf(stderr, "iteration %zu: no crash-preserving edit among %zu\n",
                 r.iteration_index, r.edits_considered);
  }
}

int RunMinimize(const GlobalOptions& global, const MinimizeArgs& args) {
  const fs::path out = args.out;
  const fs::path trace_path =
      args.trace.empty() ? fs::path(args.out + ".trace.jsonl") : fs::path(args.trace);
  for (const fs::path& o : {out, trace_path}) {
    if (absl::Status s = CheckDistinct(o, {args.crash, args.pass}); !s.ok()) {
      return Fail(s);
    }
  }
  absl::StatusOr<TargetSpec> target = BuildTarget(args.target, global);
  if (!target.ok()) return Fail(target.status());
  absl::StatusOr<ByteInput> crashing = ReadInputFile(args.crash);
  if (!crashing.ok()) return Fail(crashing.status());
  absl::StatusOr<ByteInput> passing = ReadInputFile(args.pass);
  if (!passing.ok()) return Fail(passing.status());

  const TargetOracle oracle(*std::move(target));
  IterationObserver observer;
  if (global.verbose) observer = LogIteration;
  absl::StatusOr<MinimizationTrace> trace = RefineCrash(
      oracle, *crashing, *passing, BuildMinimizeOptions(global), observer);
  if (!trace.ok()) return Fail(trace.status());

  if (absl::Status s = WriteFileAtomically(out, trace->final_input.view());
      !s.ok()) {
    return Fail(s);
  }
  if (absl::Status s = WriteFileAtomically(trace_path, TraceToJsonLines(*trace));
      !s.ok()) {
    return Fail(s);
  }
  size_t committed = 0;
  for (const IterationRecord& r : trace->iterations) committed += r.chosen_edit.has_value();
  std::printf("original distance: %zu\n", trace->initial_distance);
  std::printf("final distance:    %zu\n", trace->final_distance());
  std::printf("iterations:        %zu (%zu committed)\n",
              trace->iterations.size(), committed);
  std::printf("executions:        %zu\n", trace->total_executions);
  std::printf("stop reason:       %s\n",
              std::string(StopReasonName(trace->stop_reason)).c_str());
  std::printf("wrote %s and %s\n", out.c_str(), trace_path.c_str());
  return ExitCodeFor(trace->stop_reason);
}

int RunDdmin(const GlobalOptions& global, const DdminArgs& args) {
  if (absl::Status s = CheckDistinct(args.out, {args.crash}); !s.ok()) {
    return Fail(s);
  }
  absl::StatusOr<TargetSpec> target = BuildTarget(args.target, global);
  if (!target.ok()) return Fail(target.status());
  absl::StatusOr<ByteInput> crashing = ReadInputFile(args.crash);
  if (!crashing.ok()) return Fail(crashing.status());

  const TargetOracle oracle(*std::move(target));
  absl::StatusOr<DdminResult> result =
      Ddmin(oracle, *crashing, BuildMinimizeOptions(global));
  if (!result.ok()) return Fail(result.status());
  if (absl::Status s = WriteFileAtomically(args.out, result->output.view());
      !s.ok()) {
    return Fail(s);
  }
  std::printf("original size: %zu\n", crashing->size());
  std::printf("final size:    %zu\n", result->output.size());
  std::printf("executions:    %zu\n", result->executions);
  std::printf("stop reason:   %s\n",
              std::string(StopReasonName(result->stop_reason)).c_str());
  std::printf("fingerprint:   %s\n", result->fingerprint.ToString().c_str());
  return ExitCodeFor(result->stop_reason);
}

nlohmann::ordered_json ReportJson(const DistanceReport& r, bool with_refined) {
  nlohmann::ordered_json j;
  j["distOriginal"] = r.dist_original;
  if (with_refined) {
    j["distRefined"] = r.dist_refined;
    j["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio)
                         : nlohmann::ordered_json(nullptr);
  }
  j["passingSize"] = r.passing_size;
  j["originalSize"] = r.original_size;
  if (with_refined) j["refinedSize"] = r.refined_size;
  return j;
}

// min/avg/max over one column.
struct ColumnStats {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  size_t n = 0;

  void Add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
    ++n;
  }
  std::string Min() const { return n ? Format(min) : "-"; }
  std::string Avg() const { return n ? Format(sum / n) : "-"; }
  std::string Max() const { return n ? Format(max) : "-"; }
  static std::string Format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }
};

int RunDistance(const DistanceArgs& args) {
  const fs::path pass_path = args.paths[0];
  absl::StatusOr<ByteInput> original = ReadInputFile(args.paths[1]);
  if (!original.ok()) return Fail(original.status());
  const bool with_refined = args.paths.size() == 3;
  ByteInput refined = *original;
  if (with_refined) {
    absl::StatusOr<ByteInput> r = ReadInputFile(args.paths[2]);
    if (!r.ok()) return Fail(r.status());
    refined = *std::move(r);
  }

  std::error_code ec;
  if (!fs::is_directory(pass_path, ec)) {
    absl::StatusOr<ByteInput> passing = ReadInputFile(pass_path);
    if (!passing.ok()) return Fail(passing.status());
    const DistanceReport report = MakeDistanceReport(*passing, *original, refined);
    std::printf("%s\n", ReportJson(report, with_refined).dump().c_str());
    if (!args.json_only) {
      if (with_refined) {
        std::printf("distance %zu -> %zu (ratio %s)\n", report.dist_original,
                    report.dist_refined, FormatRatio(report.ratio).c_str());
      } else {
        std::printf("distance %zu\n", report.dist_original);
      }
    }
    return kExitOk;
  }

  absl::StatusOr<std::vector<fs::path>> seeds = ListRegularFiles(pass_path);
  if (!seeds.ok()) return Fail(seeds.status());
  if (seeds->empty()) {
    return Fail(absl::FailedPreconditionError(
        absl::StrCat("no seed files in ", pass_path.string())));
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string table = with_refined ? "seed\tdist_original\tdist_refined\tratio\n"
                                   : "seed\tdist_original\n";
  ColumnStats orig_stats, refined_stats, ratio_stats;
  for (const fs::path& seed : *seeds) {
    absl::StatusOr<ByteInput> passing = ReadInputFile(seed);
    if (!passing.ok()) return Fail(passing.status());
    const DistanceReport report = MakeDistanceReport(*passing, *original, refined);
    nlohmann::ordered_json row = ReportJson(report, with_refined);
    row["seed"] = seed.filename().string();
    rows.push_back(std::move(row));
    orig_stats.Add(report.dist_original);
    absl::StrAppend(&table, seed.filename().string(), "\t", report.dist_original);
    if (with_refined) {
      refined_stats.Add(report.dist_refined);
      if (report.ratio) ratio_stats.Add(*report.ratio);
      absl::StrAppend(&table, "\t", report.dist_refined, "\t",
                      FormatRatio(report.ratio));
    }
    table += "\n";
  }
  auto stat_row = [&](std::string_view label, auto pick) {
    absl::StrAppend(&table, std::string(label), "\t", pick(orig_stats));
    if (with_refined) {
      absl::StrAppend(&table, "\t", pick(refined_stats), "\t", pick(ratio_stats));
    }
    table += "\n";
  };
  stat_row("min", [](const ColumnStats& c) { return c.Min(); });
  stat_row("avg", [](const ColumnStats& c) { return c.Avg(); });
  stat_row("max", [](const ColumnStats& c) { return c.Max(); });

  if (args.json_only) {
    nlohmann::ordered_json doc;
    doc["seeds"] = std::move(rows);
    std::printf("%s\n", doc.dump().c_str());
  } else {
    std::fputs(table.c_str(), stdout);
  }
  return kExitOk;
}

int RunSbfl(const SbflArgs& args) {
  absl::StatusOr<sbfl::Granularity> granularity =
      sbfl::ParseGranularity(args.granularity);
  if (!granularity.ok()) return Fail(granularity.status());
  if (args.format != "tsv" && args.format != "json") {
    return Fail(absl::InvalidArgumentError("--format must be tsv or json"));
  }
  std::optional<std::set<std::string>> buggy;
  if (!args.buggy.empty()) {
    absl::StatusOr<std::set<std::string>> loaded = sbfl::LoadElementList(args.buggy);
    if (!loaded.ok()) return Fail(loaded.status());
    buggy = *std::move(loaded);
  }

  if (!args.compare.empty()) {
    if (args.compare.size() != args.names.size()) {
      return Fail(absl::InvalidArgumentError(absl::StrCat(
          "--compare got ", args.compare.size(), " manifests but --names has ",
          args.names.size(), " entries")));
    }
    if (!buggy) {
      return Fail(absl::InvalidArgumentError("--compare needs --buggy"));
    }
    std::vector<sbfl::Setup> setups;
    for (size_t i = 0; i < args.compare.size(); ++i) {
      absl::StatusOr<sbfl::CoverageSpectrum> s =
          sbfl::LoadSpectrumManifest(args.compare[i]);
      if (!s.ok()) {
        return Fail(absl::Status(s.status().code(),
                                 absl::StrCat(args.compare[i], ": ",
                                              std::string(s.status().message()))));
      }
      setups.push_back({args.names[i], *std::move(s)});
    }
    absl::StatusOr<sbfl::ComparisonTable> table = sbfl::CompareSetups(setups, *buggy);
    if (!table.ok()) return Fail(table.status());
    if (args.format == "json") {
      std::printf("%s\n", sbfl::ComparisonToJson(*table).c_str());
    } else {
      std::fputs(sbfl::ComparisonToTsv(*table).c_str(), stdout);
    }
    return kExitOk;
  }

  if (args.manifest.empty()) {
    return Fail(absl::InvalidArgumentError("either --manifest or --compare is required"));
  }
  absl::StatusOr<sbfl::CoverageSpectrum> spectrum =
      sbfl::LoadSpectrumManifest(args.manifest);
  if (!spectrum.ok()) return Fail(spectrum.status());
  absl::StatusOr<sbfl::SuspiciousnessRanking> ranking =
      sbfl::Rank(*spectrum, *granularity);
  if (!ranking.ok()) return Fail(ranking.status());

  std::optional<size_t> buggy_rank;
  if (buggy) {
    std::set<std::string> ids = *buggy;
    if (*granularity == sbfl::Granularity::kFunction) {
      ids.clear();
      for (const std::string& e : *buggy) {
        auto it = spectrum->function_map->find(e);
        if (it != spectrum->function_map->end()) ids.insert(it->second);
      }
    }
    buggy_rank = ranking->BestRankOf(ids);
  }
  if (args.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(
        sbfl::RankingToJson(*ranking, args.top));
    if (buggy_rank) j["buggyBestRank"] = *buggy_rank;
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::fputs(sbfl::RankingToTsv(*ranking, args.top).c_str(), stdout);
    if (buggy_rank) std::printf("buggy best rank: %zu\n", *buggy_rank);
  }
  return kExitOk;
}

int RunBatch(const GlobalOptions& global, const BatchArgs& args) {
  absl::StatusOr<TargetSpec> target = BuildTarget(args.target, global);
  if (!target.ok()) return Fail(target.status());
  absl::StatusOr<ByteInput> crashing = ReadInputFile(args.crash);
  if (!crashing.ok()) return Fail(crashing.status());
  absl::StatusOr<std::vector<fs::path>> seeds = ListRegularFiles(args.seeds);
  if (!seeds.ok()) return Fail(absl::FailedPreconditionError(seeds.status().message()));
  if (seeds->empty()) {
    return Fail(absl::FailedPreconditionError(
        absl::StrCat("no seed files in ", args.seeds)));
  }
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) {
    return Fail(absl::InternalError(
        absl::StrCat("cannot create ", args.out_dir, ": ", ec.message())));
  }
  if (SameFile(args.out_dir, args.seeds)) {
    return Fail(absl::InvalidArgumentError("--out-dir must differ from --seeds"));
  }

  const TargetOracle oracle(*std::move(target));
  const MinimizeOptions options = BuildMinimizeOptions(global);
  std::string table =
      "seed\tstatus\tdist_original\tdist_refined\tratio\titerations\t"
      "executions\twall_ms\n";
  ColumnStats orig_stats, refined_stats, ratio_stats;
  size_t succeeded = 0;
  size_t total_execs = 0;
  int64_t total_wall = 0;
  bool interrupted = false;
  for (const fs::path& seed : *seeds) {
    if (options.cancel->load()) {
      interrupted = true;
      break;
    }
    const std::string name = seed.filename().string();
    absl::StatusOr<ByteInput> passing = ReadInputFile(seed);
    absl::StatusOr<MinimizationTrace> trace =
        passing.ok() ? RefineCrash(oracle, *crashing, *passing, options)
                     : absl::StatusOr<MinimizationTrace>(passing.status());
    if (!trace.ok()) {
      const std::string status = ExitCodeFor(trace.status()) == kExitNondeterministic
                                     ? "nondeterministic"
                                     : "failed";
      absl::StrAppend(&table, name, "\t", status, "\t-\t-\t-\t-\t-\t-\n");
      std::fprintf(stderr, "crashrefine: %s: %s\n", name.c_str(),
                   std::string(trace.status().message()).c_str());
      continue;
    }
    if (trace->stop_reason == StopReason::kInterrupted) interrupted = true;
    const fs::path out = fs::path(args.out_dir) / (name + ".min");
    absl::Status write = WriteFileAtomically(out, trace->final_input.view());
    if (write.ok()) {
      write = WriteFileAtomically(fs::path(out.string() + ".trace.jsonl"),
                                  TraceToJsonLines(*trace));
    }
    if (!write.ok()) return Fail(write);
    const DistanceReport report =
        MakeDistanceReport(*passing, *crashing, trace->final_input);
    ++succeeded;
    total_execs += trace->total_executions;
    total_wall += trace->wall_millis;
    orig_stats.Add(report.dist_original);
    refined_stats.Add(report.dist_refined);
    if (report.ratio) ratio_stats.Add(*report.ratio);
    absl::StrAppend(&table, name, "\t",
                    trace->truncated()
                        ? std::string(StopReasonName(trace->stop_reason))
                        : std::string("ok"),
                    "\t", report.dist_original, "\t", report.dist_refined, "\t",
                    FormatRatio(report.ratio), "\t", trace->iterations.size(),
                    "\t", trace->total_executions, "\t", trace->wall_millis,
                    "\n");
    if (global.verbose) {
      std::fprintf(stderr, "%s: %zu -> %zu\n", name.c_str(),
                   report.dist_original, report.dist_refined);
    }
    if (interrupted) break;
  }
  auto stat_row = [&](std::string_view label, auto pick) {
    absl::StrAppend(&table, std::string(label), "\t-\t", pick(orig_stats), "\t",
                    pick(refined_stats), "\t", pick(ratio_stats), "\t-\t-\t-\n");
  };
  stat_row("min", [](const ColumnStats& c) { return c.Min(); });
  stat_row("avg", [](const ColumnStats& c) { return c.Avg(); });
  stat_row("max", [](const ColumnStats& c) { return c.Max(); });
  absl::StrAppend(&table, "total\t-\t-\t-\t-\t-\t", total_execs, "\t",
                  total_wall, "\n");

  const fs::path summary = fs::path(args.out_dir) / "summary.tsv";
  if (absl::Status s = WriteFileAtomically(summary, table); !s.ok()) {
    return Fail(s);
  }
  std::fputs(table.c_str(), stdout);
  if (interrupted) return kExitInterrupted;
  if (succeeded == 0) {
    std::fprintf(stderr, "crashrefine: no seed could be refined\n");
    return kExitPrecondition;
  }
  return kExitOk;
}

// CLI11 silently drops environment values that fail validation.
absl::Status CheckEnvironmentOptions(const CLI::App& app) {
  for (const char* name : {"--timeout-ms", "--workers"}) {
    const CLI::Option* opt = app.get_option(name);
    if (opt->count() > 0) continue;
    const char* value = std::getenv(opt->get_envname().c_str());
    if (value == nullptr || *value == '\0') continue;
    int64_t parsed = 0;
    if (!absl::SimpleAtoi(value, &parsed) || parsed <= 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          opt->get_envname(), ": expected a positive integer, got '", value,
          "'"));
    }
  }
  return absl::OkStatus();
}

void AddTargetOptions(CLI::App* cmd, std::string* target, std::string* crash) {
  cmd->add_option("--target", *target,
                  "Command line of the target; @@ is replaced by the input "
                  "file, otherwise the input goes to stdin")
      ->required();
  cmd->add_option("--crash", *crash, "Crashing input file")
      ->required()
      ->check(CLI::ExistingFile);
}

int Main(int argc, char** argv) {
  CLI::App app{"Refine fuzzer crashing inputs towards a passing seed"};
  app.name("crashrefine");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--timeout-ms", global.timeout_ms, "Per-run timeout")
      ->envname("CRASHREFINE_TIMEOUT_MS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--workers", global.workers,
                 "Concurrent target runs (default: CPUs, at most 8)")
      ->envname("CRASHREFINE_WORKERS")
      ->check(CLI::PositiveNumber);
  app.add_option("--crash-signals", global.crash_signals,
                 "Comma-separated signals counted as crashes "
                 "(default SEGV,ABRT,ILL,BUS,FPE)");
  app.add_option("--crash-token", global.crash_token,
                 "Regex searched in stderr; a match counts as a crash");
  app.add_option("--max-execs", global.max_execs, "Target run budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-wall-ms", global.max_wall_ms, "Wall time budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--env", global.env, "KEY=VALUE set for the target")
      ->take_all();
  app.add_option("--cwd", global.cwd, "Working directory of the target");
  app.add_flag("-v,--verbose", global.verbose, "Log progress to stderr");

  MinimizeArgs minimize;
  CLI::App* minimize_cmd =
      app.add_subcommand("minimize", "Refine a crashing input towards a passing one");
  AddTargetOptions(minimize_cmd, &minimize.target, &minimize.crash);
  minimize_cmd->add_option("--pass", minimize.pass, "Passing input file")
      ->required()
      ->check(CLI::ExistingFile);
  minimize_cmd->add_option("--out", minimize.out, "Refined input file")->required();
  minimize_cmd->add_option("--trace", minimize.trace,
                           "JSON-lines trace (default: <out>.trace.jsonl)");

  DdminArgs ddmin;
  CLI::App* ddmin_cmd =
      app.add_subcommand("ddmin", "Minimize a crashing input with delta debugging");
  AddTargetOptions(ddmin_cmd, &ddmin.target, &ddmin.crash);
  ddmin_cmd->add_option("--out", ddmin.out, "Minimized input file")->required();

  DistanceArgs distance;
  CLI::App* distance_cmd = app.add_subcommand(
      "distance", "Edit distances from a passing input (or seed directory)");
  distance_cmd->add_option("paths", distance.paths, "PASS CRASH [REFINED]")
      ->required()
      ->expected(2, 3);
  distance_cmd->add_flag("--json", distance.json_only, "JSON output only");

  SbflArgs sbfl_args;
  CLI::App* sbfl_cmd =
      app.add_subcommand("sbfl", "Op2 suspiciousness ranking from coverage spectra");
  sbfl_cmd->add_option("--manifest", sbfl_args.manifest, "Spectrum manifest");
  sbfl_cmd->add_option("--granularity", sbfl_args.granularity,
                       "statement or function")
      ->capture_default_str();
  sbfl_cmd->add_option("--top", sbfl_args.top, "Entries to print")
      ->capture_default_str();
  sbfl_cmd->add_option("--buggy", sbfl_args.buggy,
                       "File listing buggy elements, one per line");
  sbfl_cmd->add_option("--compare", sbfl_args.compare,
                       "Manifests of the setups to compare")
      ->expected(1, 16);
  sbfl_cmd->add_option("--names", sbfl_args.names,
                       "Setup names for --compare (default fuzz ddmin refined)")
      ->delimiter(',');
  sbfl_cmd->add_option("--format", sbfl_args.format, "tsv or json")
      ->capture_default_str();

  BatchArgs batch;
  CLI::App* batch_cmd = app.add_subcommand(
      "batch", "Refine one crashing input against every seed in a directory");
  AddTargetOptions(batch_cmd, &batch.target, &batch.crash);
  batch_cmd->add_option("--seeds", batch.seeds, "Directory of passing seeds")
      ->required();
  batch_cmd->add_option("--out-dir", batch.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }
  if (absl::Status env = CheckEnvironmentOptions(app); !env.ok()) {
    return Fail(env);
  }

  InstallInterruptHandler();
  if (*minimize_cmd) return RunMinimize(global, minimize);
  if (*ddmin_cmd) return RunDdmin(global, ddmin);
  if (*distance_cmd) return RunDistance(distance);
  if (*sbfl_cmd) return RunSbfl(sbfl_args);
  if (*batch_cmd) return RunBatch(global, batch);
  return kExitPrecondition;
}

}  // namespace
}  // namespace crashrefine::cli

int main(int argc, char** argv) { return crashrefine::cli::Main(argc, argv); }
