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

#ifndef LARCH_CRYPTO_PRG_HPP_
#define LARCH_CRYPTO_PRG_HPP_

#include <vector>

#include "larch/crypto/group.hpp"

namespace larch::crypto {

// Deterministic scalars from (seed, counter): the ChaCha20 keystream under
// key = seed and nonce = 0^4 || counter (big-endian u64) is cut into 32-byte
// big-endian candidates, and candidates >= q are skipped.
std::vector<Scalar> PrgExpand(const Bytes32& seed, uint64_t counter, size_t count);

// Sequential byte stream for seeded protocol randomness (OT, garbling,
// proof tapes). Deterministic in (seed, domain).
class StreamPrg {
 public:
  StreamPrg(ByteSpan seed, uint64_t domain = 0);

  void Fill(std::span<uint8_t> out);
  Bytes Next(size_t n);
  template <size_t N>
  std::array<uint8_t, N> NextArray() {
    std::array<uint8_t, N> out;
    Fill(out);
    return out;
  }
  Scalar NextScalar();

 private:
  void Refill();

  Bytes32 key_;
  std::array<uint8_t, 12> nonce_{};
  uint32_t block_ = 0;
  Bytes buffer_;
  size_t pos_ = 0;
};

}  // namespace larch::crypto

#endif  // LARCH_CRYPTO_PRG_HPP_
