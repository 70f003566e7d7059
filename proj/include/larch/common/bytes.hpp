// Copyright 2026 The larchkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LARCH_COMMON_BYTES_HPP_
#define LARCH_COMMON_BYTES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace larch {

using Bytes = std::vector<uint8_t>;
using Bytes32 = std::array<uint8_t, 32>;
using Bytes16 = std::array<uint8_t, 16>;
using ByteSpan = std::span<const uint8_t>;

std::string HexEncode(ByteSpan data);
// Throws std::invalid_argument on odd length or non-hex characters.
Bytes HexDecode(std::string_view hex);

std::string Base64Encode(ByteSpan data);
// Throws std::invalid_argument on malformed input.
Bytes Base64Decode(std::string_view text);

inline Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

template <size_t N>
Bytes ToBytes(const std::array<uint8_t, N>& a) {
  return Bytes(a.begin(), a.end());
}

// Copies exactly N bytes; throws std::invalid_argument on size mismatch.
template <size_t N>
std::array<uint8_t, N> ToArray(ByteSpan data);

Bytes Concat(std::initializer_list<ByteSpan> parts);

bool ConstantTimeEqual(ByteSpan a, ByteSpan b);

// Big-endian framing helpers used by every binary wire format.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U32(uint32_t v);
  void U64(uint64_t v);
  void Raw(ByteSpan data) { out_.insert(out_.end(), data.begin(), data.end()); }
  // u32 length prefix followed by the bytes.
  void Sized(ByteSpan data);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Reads never run past the end; all failures throw std::out_of_range.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  ByteSpan Raw(size_t n);
  template <size_t N>
  std::array<uint8_t, N> Fixed() {
    return ToArray<N>(Raw(N));
  }
  ByteSpan Sized(size_t max_len = SIZE_MAX);

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  void ExpectDone() const;

 private:
  ByteSpan data_;
  size_t pos_ = 0;
};

}  // namespace larch

#endif  // LARCH_COMMON_BYTES_HPP_
