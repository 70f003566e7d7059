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

#include "larch/common/bytes.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <stdexcept>

namespace larch {

std::string HexEncode(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes HexDecode(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw std::invalid_argument("hex string has odd length");
  }
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    const int hi = HexValue(hex[2 * i]);
    const int lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw std::invalid_argument("invalid hex character");
    }
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string Base64Encode(ByteSpan data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<size_t>(n));
  return out;
}

Bytes Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw std::invalid_argument("base64 length is not a multiple of 4");
  }
  if (text.empty()) return {};
  Bytes out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(),
                                reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) {
    throw std::invalid_argument("malformed base64");
  }
  size_t pad = 0;
  if (text.back() == '=') ++pad;
  if (text.size() >= 2 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<size_t>(n) - pad);
  return out;
}

template <size_t N>
std::array<uint8_t, N> ToArray(ByteSpan data) {
  if (data.size() != N) {
    throw std::invalid_argument("expected " + std::to_string(N) +
                                " bytes, got " + std::to_string(data.size()));
  }
  std::array<uint8_t, N> out;
  std::copy(data.begin(), data.end(), out.begin());
  return out;
}

template std::array<uint8_t, 12> ToArray<12>(ByteSpan);
template std::array<uint8_t, 16> ToArray<16>(ByteSpan);
template std::array<uint8_t, 32> ToArray<32>(ByteSpan);
template std::array<uint8_t, 33> ToArray<33>(ByteSpan);
template std::array<uint8_t, 28> ToArray<28>(ByteSpan);
template std::array<uint8_t, 44> ToArray<44>(ByteSpan);
template std::array<uint8_t, 64> ToArray<64>(ByteSpan);

Bytes Concat(std::initializer_list<ByteSpan> parts) {
  Bytes out;
  for (ByteSpan p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool ConstantTimeEqual(ByteSpan a, ByteSpan b) {
  return a.size() == b.size() && CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

void ByteWriter::U32(uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void ByteWriter::U64(uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void ByteWriter::Sized(ByteSpan data) {
  if (data.size() > UINT32_MAX) {
    throw std::invalid_argument("sized field exceeds u32 length");
  }
  U32(static_cast<uint32_t>(data.size()));
  Raw(data);
}

uint8_t ByteReader::U8() { return Raw(1)[0]; }

uint32_t ByteReader::U32() {
  ByteSpan b = Raw(4);
  return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) |
         (uint32_t{b[2]} << 8) | uint32_t{b[3]};
}

uint64_t ByteReader::U64() {
  ByteSpan b = Raw(8);
  uint64_t v = 0;
  for (uint8_t x : b) v = (v << 8) | x;
  return v;
}

ByteSpan ByteReader::Raw(size_t n) {
  if (n > remaining()) {
    throw std::out_of_range("truncated input: need " + std::to_string(n) +
                            " bytes, have " + std::to_string(remaining()));
  }
  ByteSpan out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

ByteSpan ByteReader::Sized(size_t max_len) {
  const uint32_t n = U32();
  if (n > max_len) {
    throw std::out_of_range("sized field too long");
  }
  return Raw(n);
}

void ByteReader::ExpectDone() const {
  if (!done()) {
    throw std::out_of_range("trailing bytes after message");
  }
}

}  // namespace larch
