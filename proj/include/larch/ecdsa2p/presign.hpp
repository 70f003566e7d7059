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

#ifndef LARCH_ECDSA2P_PRESIGN_HPP_
#define LARCH_ECDSA2P_PRESIGN_HPP_

#include <cstdint>
#include <vector>

#include "larch/crypto/group.hpp"

namespace larch::ecdsa2p {

using crypto::Scalar;

// One party's half of a presignature. Recombined values satisfy
//   r0 + r1 = r^-1, rhat = alpha * r^-1, c = a * b, (f, g, h) = alpha * (a, b, c),
// and t = f(g^r) != 0.
struct PresigShare {
  Scalar t, r, rhat, alpha, a, b, c, f, g, h;
};

// Log half as stored and uploaded: six explicit scalars; r0, alpha0, a0, b0
// come from the batch's log seed and the presignature index. A zero t marks a
// void index that must never be used.
struct LogPresigEntry {
  static constexpr size_t kSize = 6 * 32;
  Scalar t, rhat, c, f, g, h;

  std::array<uint8_t, kSize> Encode() const;
  // Throws std::invalid_argument on non-canonical scalars.
  static LogPresigEntry Decode(ByteSpan data);
  bool is_void() const { return t.IsZero(); }
  bool operator==(const LogPresigEntry&) const = default;
};

// The log's copy of a batch.
struct LogPresignBatch {
  static constexpr uint8_t kVersion = 1;
  uint64_t base_index = 0;
  Bytes32 log_seed{};
  std::vector<LogPresigEntry> entries;

  // version u8 | count u32 | base index u64 | log seed (32) | entries
  Bytes Serialize() const;
  // Throws std::invalid_argument / std::out_of_range on malformed input.
  static LogPresignBatch Deserialize(ByteSpan data);
  bool Contains(uint64_t index) const;
  // Throws std::out_of_range for unknown indices and std::invalid_argument
  // for void ones.
  PresigShare Share(uint64_t index) const;
  bool operator==(const LogPresignBatch&) const = default;
};

// The client's copy: its seed and the public t values only.
struct ClientPresignBatch {
  uint64_t base_index = 0;
  Bytes32 client_seed{};
  std::vector<Scalar> t;

  bool Contains(uint64_t index) const;
  bool IsVoid(uint64_t index) const;
  PresigShare Share(uint64_t index) const;
};

struct PresignOutput {
  LogPresignBatch log;
  ClientPresignBatch client;
};

// Deals `count` presignatures starting at base_index. The master seed is
// split into independent client and log seeds; the client half retains only
// its own seed.
PresignOutput PresignBatch(size_t count, const Bytes32& master_seed, uint64_t base_index = 0);

}  // namespace larch::ecdsa2p

#endif  // LARCH_ECDSA2P_PRESIGN_HPP_
