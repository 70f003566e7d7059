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

#include "larch/crypto/ecdsa.hpp"

#include <stdexcept>

#include "larch/crypto/hash.hpp"

namespace larch::crypto {

std::array<uint8_t, 64> Signature::Encode() const {
  std::array<uint8_t, 64> out;
  std::copy(r.bytes().begin(), r.bytes().end(), out.begin());
  std::copy(s.bytes().begin(), s.bytes().end(), out.begin() + 32);
  return out;
}

std::optional<Signature> Signature::Decode(ByteSpan sig64) {
  if (sig64.size() != 64) return std::nullopt;
  auto r = Scalar::FromCanonical(sig64.subspan(0, 32));
  auto s = Scalar::FromCanonical(sig64.subspan(32, 32));
  if (!r || !s) return std::nullopt;
  return Signature{*r, *s};
}

Scalar DigestToScalar(const Bytes32& digest) {
  return Scalar::FromBytesReduce(digest);
}

Scalar HashToScalar(ByteSpan message) { return DigestToScalar(Sha256(message)); }

Signature EcdsaSignDigest(const Scalar& sk, const Scalar& digest,
                          const std::optional<Scalar>& nonce) {
  if (sk.IsZero()) throw std::invalid_argument("ECDSA secret key is zero");
  if (nonce && nonce->IsZero()) throw std::invalid_argument("ECDSA nonce is zero");
  for (;;) {
    const Scalar k = nonce ? *nonce : Scalar::RandomNonZero();
    const Scalar fr = GroupElement::BaseMul(k).ConvertToScalar();
    const Scalar s = k.Inverse() * (digest + fr * sk);
    if (!fr.IsZero() && !s.IsZero()) return Signature{fr, s};
    if (nonce) throw std::domain_error("ECDSA: fixed nonce yields f(R)=0 or s=0");
  }
}

Signature EcdsaSign(const Scalar& sk, ByteSpan message,
                    const std::optional<Scalar>& nonce) {
  return EcdsaSignDigest(sk, HashToScalar(message), nonce);
}

bool EcdsaVerifyDigest(const GroupElement& pk, const Scalar& digest,
                       const Signature& sig) {
  if (sig.r.IsZero() || sig.s.IsZero() || pk.IsIdentity()) return false;
  const Scalar w = sig.s.Inverse();
  // R' = (g^{H(m)} X^c)^{1/s}
  const GroupElement r_prime =
      GroupElement::MultiMul({GroupElement::Generator(), pk},
                             {digest * w, sig.r * w});
  if (r_prime.IsIdentity()) return false;
  return r_prime.ConvertToScalar() == sig.r;
}

bool EcdsaVerify(const GroupElement& pk, ByteSpan message, const Signature& sig) {
  return EcdsaVerifyDigest(pk, HashToScalar(message), sig);
}

bool EcdsaVerify(const GroupElement& pk, ByteSpan message, ByteSpan sig64) {
  auto sig = Signature::Decode(sig64);
  return sig && EcdsaVerify(pk, message, *sig);
}

}  // namespace larch::crypto
