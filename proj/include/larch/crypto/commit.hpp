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

#ifndef LARCH_CRYPTO_COMMIT_HPP_
#define LARCH_CRYPTO_COMMIT_HPP_

#include "larch/common/bytes.hpp"

namespace larch::crypto {

// Hash commitment: digest = SHA-256(key || nonce).
struct Commitment {
  Bytes32 digest;

  bool operator==(const Commitment&) const = default;
};

// key and nonce must each be exactly 32 bytes (std::invalid_argument).
Commitment Commit(ByteSpan key, ByteSpan nonce);
bool VerifyCommitment(const Commitment& cm, ByteSpan key, ByteSpan nonce);

}  // namespace larch::crypto

#endif  // LARCH_CRYPTO_COMMIT_HPP_
