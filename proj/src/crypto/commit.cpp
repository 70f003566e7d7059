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

#include "larch/crypto/commit.hpp"

#include <stdexcept>

#include "larch/crypto/hash.hpp"

namespace larch::crypto {

Commitment Commit(ByteSpan key, ByteSpan nonce) {
  if (key.size() != 32 || nonce.size() != 32) {
    throw std::invalid_argument("commit: key and nonce must be 32 bytes");
  }
  return Commitment{Sha256(Concat({key, nonce}))};
}

bool VerifyCommitment(const Commitment& cm, ByteSpan key, ByteSpan nonce) {
  return ConstantTimeEqual(Commit(key, nonce).digest, cm.digest);
}

}  // namespace larch::crypto
