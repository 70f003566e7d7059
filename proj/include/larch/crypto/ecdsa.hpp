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

#ifndef LARCH_CRYPTO_ECDSA_HPP_
#define LARCH_CRYPTO_ECDSA_HPP_

#include <optional>

#include "larch/crypto/group.hpp"

namespace larch::crypto {

// (f(R), s), serialized as 64 bytes.
struct Signature {
  Scalar r;
  Scalar s;

  std::array<uint8_t, 64> Encode() const;
  // Rejects values >= q; zero components are accepted here and rejected by
  // verification.
  static std::optional<Signature> Decode(ByteSpan sig64);

  bool operator==(const Signature&) const = default;
};

// Hash(m): SHA-256 of the message read as a big-endian integer mod q.
Scalar HashToScalar(ByteSpan message);
// Interprets a precomputed 32-byte digest as a scalar mod q.
Scalar DigestToScalar(const Bytes32& digest);

// sk must be in [1, q); nonce, when given, must be in [1, q). Resamples the
// nonce when f(R) = 0 or s = 0; with a fixed nonce those cases throw.
Signature EcdsaSign(const Scalar& sk, ByteSpan message,
                    const std::optional<Scalar>& nonce = std::nullopt);
// Signs a digest directly: the same algorithm with Hash(m) = digest.
Signature EcdsaSignDigest(const Scalar& sk, const Scalar& digest,
                          const std::optional<Scalar>& nonce = std::nullopt);

bool EcdsaVerify(const GroupElement& pk, ByteSpan message, const Signature& sig);
bool EcdsaVerifyDigest(const GroupElement& pk, const Scalar& digest,
                       const Signature& sig);
// Never throws; malformed encodings verify false.
bool EcdsaVerify(const GroupElement& pk, ByteSpan message, ByteSpan sig64);

}  // namespace larch::crypto

#endif  // LARCH_CRYPTO_ECDSA_HPP_
