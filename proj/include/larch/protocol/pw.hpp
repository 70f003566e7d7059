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

#ifndef LARCH_PROTOCOL_PW_HPP_
#define LARCH_PROTOCOL_PW_HPP_

// Password flow: the client holds an ElGamal key (x, X), the log a key
// (k, K). The password for relying party id is k_id * Hash(id)^k; the log
// only ever exponentiates registered hashes or the c2 of a ciphertext proven
// to encrypt one of them.

#include <optional>
#include <string>
#include <vector>

#include "larch/protocol/one_of_many.hpp"

namespace larch::pw {

using PwId = std::array<uint8_t, 16>;

struct Ciphertext {
  static constexpr size_t kSize = 2 * GroupElement::kSize;
  GroupElement c1, c2;

  std::array<uint8_t, kSize> Encode() const;
  static Ciphertext Decode(ByteSpan data);  // throws std::invalid_argument
  bool operator==(const Ciphertext&) const = default;
};

// Hash(id): the registered list entry for a relying party.
GroupElement HashId(const PwId& id);

struct ClientKeys {
  Scalar x;
  GroupElement X;
  static ClientKeys Generate();
};

struct LogKeys {
  Scalar k;
  GroupElement K;
  static LogKeys Generate();
};

// ElGamal under X: (g^r, m * X^r).
Ciphertext Encrypt(const GroupElement& X, const GroupElement& m, const Scalar& r);
GroupElement Decrypt(const Scalar& x, const Ciphertext& ct);

// Registration: the log answers Hash(id)^k for a freshly registered hash.
GroupElement LogEvaluate(const Scalar& k, const GroupElement& h);

// Recommended path: a fresh random k_id. The resulting password is
// k_id * Hash(id)^k.
GroupElement RandomKeyShare();
GroupElement PasswordFromShare(const GroupElement& k_id, const GroupElement& hk);
// Legacy path: the share that reproduces an existing password.
GroupElement KeyShareForPassword(const GroupElement& password_point, const GroupElement& hk);

// Reversible encoding of a legacy password (at most kMaxLegacyLength bytes)
// as a curve point.
inline constexpr size_t kMaxLegacyLength = 28;
GroupElement EncodeLegacyPassword(std::string_view password);
std::optional<std::string> DecodeLegacyPassword(const GroupElement& point);

// Password shown to the user: base64 of the compressed point, or the decoded
// legacy string.
std::string RenderPassword(const GroupElement& password, bool legacy);

// The registered list padded with random elements to a power of two (at
// least two entries, so proofs never reveal the exponent).
std::vector<GroupElement> PadList(const std::vector<GroupElement>& hashes);
size_t PaddedSize(size_t count);

struct AuthRequest {
  Ciphertext ct;
  OneOfManyProof pi1;  // h_idx = X^r
  OneOfManyProof pi2;  // h_idx = c1^x
  uint64_t list_version = 0;

  // ct (66) | version u64 | sized pi1 | sized pi2
  Bytes Serialize() const;
  static AuthRequest Deserialize(ByteSpan data);
};

// h_i = c2 / list_i.
std::vector<GroupElement> ShiftedList(const std::vector<GroupElement>& list,
                                      const GroupElement& c2);

struct ClientAuth {
  AuthRequest request;
  Scalar r;
};

// Throws std::invalid_argument if Hash(id) is not in the list.
ClientAuth BuildAuthRequest(const ClientKeys& keys, const PwId& id,
                            const std::vector<GroupElement>& padded_list, uint64_t version);

// Log side: checks both proofs against the list for `version`. Throws
// ProtocolError with REJECT_STALE or REJECT_PROOF.
void VerifyAuthRequest(const GroupElement& client_X, const std::vector<GroupElement>& padded_list,
                       uint64_t current_version, const AuthRequest& request);

// y * K^(-x r) recovers Hash(id)^k; the password is k_id times that.
GroupElement FinishAuth(const ClientKeys& keys, const GroupElement& K, const Scalar& r,
                        const GroupElement& y, const GroupElement& k_id);

}  // namespace larch::pw

#endif  // LARCH_PROTOCOL_PW_HPP_
