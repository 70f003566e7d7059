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

#ifndef LARCH_ECDSA2P_KEYS_HPP_
#define LARCH_ECDSA2P_KEYS_HPP_

#include "larch/crypto/group.hpp"

namespace larch::ecdsa2p {

// Log share x of every credential key for one client; X = g^x.
struct LogSigningKey {
  crypto::Scalar x;
  crypto::GroupElement X;

  static LogSigningKey Generate();
};

// Client share y for one relying party; pk = X * g^y.
struct ClientCredentialKey {
  crypto::Scalar y;
  crypto::GroupElement pk;

  // Throws std::invalid_argument when X is the identity.
  static ClientCredentialKey Generate(const crypto::GroupElement& X);
};

}  // namespace larch::ecdsa2p

#endif  // LARCH_ECDSA2P_KEYS_HPP_
