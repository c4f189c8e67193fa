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

#ifndef CRASHREFINE_BYTE_INPUT_H_
#define CRASHREFINE_BYTE_INPUT_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

namespace crashrefine {

// An immutable test input. Bytes are raw octets and are never decoded or
// trimmed; a trailing newline is a real byte like any other.
class ByteInput {
 public:
  static constexpr size_t kMaxSize = std::numeric_limits<int32_t>::max();

  ByteInput() = default;
  explicit ByteInput(std::string bytes);
  explicit ByteInput(std::string_view bytes) : ByteInput(std::string(bytes)) {}
  explicit ByteInput(const char* bytes) : ByteInput(std::string(bytes)) {}
  explicit ByteInput(std::span<const uint8_t> bytes);

  size_t size() const { return bytes_.size(); }
  bool empty() const { return bytes_.empty(); }
  uint8_t operator[](size_t i) const {
    return static_cast<uint8_t>(bytes_[i]);
  }

  std::string_view view() const { return bytes_; }
  std::span<const uint8_t> bytes() const {
    return {reinterpret_cast<const uint8_t*>(bytes_.data()), bytes_.size()};
  }
  const std::string& str() const { return bytes_; }

  friend bool operator==(const ByteInput&, const ByteInput&) = default;
  friend auto operator<=>(const ByteInput&, const ByteInput&) = default;

 private:
  std::string bytes_;
};

// Lowercase hexadecimal rendering, two digits per byte.
std::string ToHex(std::string_view bytes);
inline std::string ToHex(const ByteInput& input) { return ToHex(input.view()); }

// Inverse of ToHex. Returns false on odd length or non-hex digits.
bool FromHex(std::string_view hex, std::string* out);

}  // namespace crashrefine

#endif  // CRASHREFINE_BYTE_INPUT_H_
