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

#ifndef LARCH_CRYPTO_HASH_HPP_
#define LARCH_CRYPTO_HASH_HPP_

#include <memory>

#include "larch/common/bytes.hpp"

namespace larch::crypto {

Bytes32 Sha256(ByteSpan data);
Bytes32 HmacSha256(ByteSpan key, ByteSpan data);

// Incremental SHA-256 for transcripts.
class Sha256Hasher {
 public:
  Sha256Hasher();
  ~Sha256Hasher();
  Sha256Hasher(const Sha256Hasher&) = delete;
  Sha256Hasher& operator=(const Sha256Hasher&) = delete;

  Sha256Hasher& Update(ByteSpan data);
  Sha256Hasher& Update(std::string_view text);
  Sha256Hasher& UpdateU64(uint64_t v);
  Bytes32 Final();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

void RandomBytes(std::span<uint8_t> out);

template <size_t N>
std::array<uint8_t, N> RandomArray() {
  std::array<uint8_t, N> out;
  RandomBytes(out);
  return out;
}

}  // namespace larch::crypto

#endif  // LARCH_CRYPTO_HASH_HPP_
