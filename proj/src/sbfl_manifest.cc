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

#include <fstream>
#include <sstream>
#include <string>

#include "absl/strings/str_cat.h"
#include "crashrefine/sbfl.h"
#include "json.hpp"
#include "text_util.h"

namespace crashrefine::sbfl {
namespace {

absl::StatusOr<std::string> ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  size_t line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    fn(line_no, line);
  }
}

absl::Status FieldError(std::string_view field, std::string_view problem) {
  return absl::InvalidArgumentError(absl::StrCat(std::string(field), ": ", std::string(problem)));
}

}  // namespace

absl::StatusOr<std::set<std::string>> LoadElementList(
    const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadText(path);
  if (!text.ok()) return text.status();
  std::set<std::string> out;
  ForEachLine(*text, [&](size_t, std::string_view line) {
    line = internal::TrimAscii(line);
    if (!line.empty()) out.emplace(line);
  });
  return out;
}

absl::StatusOr<CoverageSpectrum> LoadSpectrumManifest(
    const std::filesystem::path& manifest) {
  absl::StatusOr<std::string> text = ReadText(manifest);
  if (!text.ok()) return text.status();
  const nlohmann::json doc = nlohmann::json::parse(*text, nullptr,
                                                   /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(manifest.string(), ": not valid JSON"));
  }
  if (!doc.is_object()) return FieldError("(root)", "expected an object");
  const std::filesystem::path base = manifest.parent_path();

  CoverageSpectrum spectrum;
  if (!doc.contains("tests") || !doc["tests"].is_array()) {
    return FieldError("tests", "expected an array");
  }
  const nlohmann::json& tests = doc["tests"];
  for (size_t i = 0; i < tests.size(); ++i) {
    const std::string where = absl::StrCat("tests[", i, "]");
    const nlohmann::json& t = tests[i];
    if (!t.is_object()) return FieldError(where, "expected an object");
    TestCoverage test;
    if (!t.contains("id") || !t["id"].is_string()) {
      return FieldError(where + ".id", "expected a string");
    }
    test.id = t["id"].get<std::string>();
    if (!t.contains("verdict") || !t["verdict"].is_string()) {
      return FieldError(where + ".verdict", "expected \"pass\" or \"fail\"");
    }
    const std::string verdict = t["verdict"].get<std::string>();
    if (verdict == "pass") {
      test.verdict = Verdict::kPass;
    } else if (verdict == "fail") {
      test.verdict = Verdict::kFail;
    } else {
      return FieldError(where + ".verdict",
                        absl::StrCat("expected \"pass\" or \"fail\", got \"",
                                     verdict, "\""));
    }
    if (!t.contains("coverageFile") || !t["coverageFile"].is_string()) {
      return FieldError(where + ".coverageFile", "expected a path string");
    }
    absl::StatusOr<std::string> coverage =
        ReadText(base / t["coverageFile"].get<std::string>());
    if (!coverage.ok()) {
      return FieldError(where + ".coverageFile", std::string(coverage.status().message()));
    }
    ForEachLine(*coverage, [&](size_t, std::string_view line) {
      line = internal::TrimAscii(line);
      if (line.empty()) return;
      test.covered.emplace(line);
      spectrum.elements.emplace(line);
    });
    spectrum.tests.push_back(std::move(test));
  }

  if (doc.contains("functionMap") && !doc["functionMap"].is_null()) {
    if (!doc["functionMap"].is_string()) {
      return FieldError("functionMap", "expected a path string");
    }
    absl::StatusOr<std::string> map_text =
        ReadText(base / doc["functionMap"].get<std::string>());
    if (!map_text.ok()) {
      return FieldError("functionMap", std::string(map_text.status().message()));
    }
    std::map<std::string, std::string> function_map;
    absl::Status bad_line = absl::OkStatus();
    ForEachLine(*map_text, [&](size_t line_no, std::string_view line) {
      if (!bad_line.ok()) return;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (internal::TrimAscii(line).empty()) return;
      const size_t tab = line.find('\t');
      if (tab == std::string_view::npos) {
        bad_line = FieldError("functionMap",
                              absl::StrCat("line ", line_no,
                                           " is not \"element<TAB>function\""));
        return;
      }
      std::string element(internal::TrimAscii(line.substr(0, tab)));
      std::string function(internal::TrimAscii(line.substr(tab + 1)));
      spectrum.elements.insert(element);
      function_map[std::move(element)] = std::move(function);
    });
    if (!bad_line.ok()) return bad_line;
    spectrum.function_map = std::move(function_map);
  }

  if (absl::Status s = spectrum.Validate(); !s.ok()) {
    return FieldError("tests", std::string(s.message()));
  }
  return spectrum;
}

}  // namespace crashrefine::sbfl
