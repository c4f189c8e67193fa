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

#ifndef CRASHREFINE_FILE_UTIL_H_
#define CRASHREFINE_FILE_UTIL_H_

#include <filesystem>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "crashrefine/byte_input.h"

namespace crashrefine {

absl::StatusOr<ByteInput> ReadInputFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
absl::Status WriteFileAtomically(const std::filesystem::path& path,
                                 std::string_view contents);

// Regular files directly inside `dir`, sorted by name.
absl::StatusOr<std::vector<std::filesystem::path>> ListRegularFiles(
    const std::filesystem::path& dir);

// True when both paths name the same existing file, or the same path
// after normalization.
bool SameFile(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace crashrefine

#endif  // CRASHREFINE_FILE_UTIL_H_
