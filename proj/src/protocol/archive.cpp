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

#include "larch/protocol/archive.hpp"

#include "larch/crypto/hash.hpp"

namespace larch::protocol {

ArchiveKey ArchiveKey::Generate() {
  ArchiveKey a;
  a.k = crypto::RandomArray<32>();
  a.r = crypto::RandomArray<32>();
  a.cm = crypto::Commit(a.k, a.r);
  return a;
}

}  // namespace larch::protocol
