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

#include "larch/crypto/prg.hpp"

#include <stdexcept>

#include "larch/crypto/chacha20.hpp"
#include "larch/crypto/hash.hpp"

namespace larch::crypto {

std::vector<Scalar> PrgExpand(const Bytes32& seed, uint64_t counter, size_t count) {
  if (count == 0) throw std::invalid_argument("PrgExpand: count must be >= 1");
  std::array<uint8_t, 12> nonce{};
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<uint8_t>(counter >> (56 - 8 * i));
  std::vector<Scalar> out;
  out.reserve(count);
  uint32_t block = 0;
  while (out.size() < count) {
    // Two candidates per 64-byte block.
    const Bytes ks = ChaCha20Keystream(seed, nonce, block++, 64);
    for (size_t off = 0; off < 64 && out.size() < count; off += 32) {
      if (auto s = Scalar::FromCanonical(ByteSpan(ks).subspan(off, 32))) {
        out.push_back(*s);
      }
    }
  }
  return out;
}

StreamPrg::StreamPrg(ByteSpan seed, uint64_t domain) {
  key_ = seed.size() == 32 ? ToArray<32>(seed) : Sha256(seed);
  for (int i = 0; i < 8; ++i) nonce_[4 + i] = static_cast<uint8_t>(domain >> (56 - 8 * i));
}

void StreamPrg::Refill() {
  constexpr size_t kChunk = 4096;
  buffer_ = ChaCha20Keystream(key_, nonce_, block_, kChunk);
  block_ += kChunk / 64;
  pos_ = 0;
}

void StreamPrg::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) Refill();
    const size_t n = std::min(out.size() - done, buffer_.size() - pos_);
    std::copy_n(buffer_.begin() + static_cast<ptrdiff_t>(pos_), n, out.begin() + static_cast<ptrdiff_t>(done));
    pos_ += n;
    done += n;
  }
}

Bytes StreamPrg::Next(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

Scalar StreamPrg::NextScalar() {
  for (;;) {
    const Bytes32 b = NextArray<32>();
    if (auto s = Scalar::FromCanonical(b)) return *s;
  }
}

}  // namespace larch::crypto
