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

#include "larch/ecdsa2p/keys.hpp"

#include <stdexcept>

namespace larch::ecdsa2p {

using crypto::GroupElement;
using crypto::Scalar;

LogSigningKey LogSigningKey::Generate() {
  LogSigningKey k;
  k.x = Scalar::RandomNonZero();
  k.X = GroupElement::BaseMul(k.x);
  return k;
}

ClientCredentialKey ClientCredentialKey::Generate(const GroupElement& X) {
  if (X.IsIdentity()) throw std::invalid_argument("log public key is the identity");
  ClientCredentialKey k;
  do {
    k.y = Scalar::RandomNonZero();
    k.pk = X + GroupElement::BaseMul(k.y);
  } while (k.pk.IsIdentity());
  return k;
}

}  // namespace larch::ecdsa2p
