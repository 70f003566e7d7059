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

#ifndef LARCH_PROTOCOL_ARCHIVE_HPP_
#define LARCH_PROTOCOL_ARCHIVE_HPP_

#include "larch/crypto/commit.hpp"

namespace larch::protocol {

// Symmetric archive key k with its commitment opening r. The log holds only
// cm = Commit(k, r); FIDO2 and TOTP records are encrypted under k.
struct ArchiveKey {
  Bytes32 k{};
  Bytes32 r{};
  crypto::Commitment cm{};

  static ArchiveKey Generate();
};

}  // namespace larch::protocol

#endif  // LARCH_PROTOCOL_ARCHIVE_HPP_
