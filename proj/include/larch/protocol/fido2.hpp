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

#ifndef LARCH_PROTOCOL_FIDO2_HPP_
#define LARCH_PROTOCOL_FIDO2_HPP_

// FIDO2 authentication: the client proves in zero knowledge that ct encrypts
// the rp id hashed into dgst under the committed archive key, then both
// parties run the online signing step on one presignature.
//
// Opening differs from the in-process check in one respect: the log never
// learns s (which would let it recover pk and link relying parties). It
// verifies the authenticated d-opening through a commit-then-reveal of
// v_i = d_hat_i - alpha_i d and releases s0 only if v0 + v1 = 0. The client
// checks the final signature under pk, which catches a bad s0.

#include <array>
#include <memory>
#include <optional>
#include <string_view>

#include "larch/circuit/circuit.hpp"
#include "larch/ecdsa2p/sign.hpp"
#include "larch/protocol/archive.hpp"
#include "larch/zk/mpcith.hpp"

namespace larch::fido2 {

using crypto::GroupElement;
using crypto::Scalar;
using Ciphertext = std::array<uint8_t, 44>;  // nonce (12) || body (32)

// Built once per process; about half a million gates.
const circuit::BooleanCircuit& Fido2Circuit();

// SHA-256(id || chal).
Bytes32 Digest(const Bytes32& rp_id, const Bytes32& chal);
// The message whose SHA-256 is dgst; signatures verify over it.
Bytes SignedMessage(std::string_view rp_name, const Bytes32& chal);

Ciphertext EncryptRpId(const Bytes32& k, const std::array<uint8_t, 12>& nonce,
                       const Bytes32& rp_id);
Bytes32 DecryptRpId(const Bytes32& k, const Ciphertext& ct);

Bytes ProofContext(uint64_t index);

struct AuthRequest {
  Bytes32 dgst{};
  Ciphertext ct{};
  Bytes proof;
  Bytes ct_sig;
  uint64_t index = 0;
  ecdsa2p::Round1Msg round1;
};

struct AuthChallenge {
  ecdsa2p::Round1Msg round1;
  crypto::Commitment v_commit;
};

struct AuthFinishReply {
  Scalar v;
  Bytes32 v_nonce{};
  Scalar s;
};

// Client half of one authentication.
class ClientSigner {
 public:
  // Samples the ct nonce, proves, signs ct and computes round 1.
  ClientSigner(const protocol::ArchiveKey& archive, const Scalar& record_sk,
               std::string_view rp_name, const Scalar& y, const GroupElement& pk,
               const Bytes32& chal, uint64_t index, const ecdsa2p::PresigShare& share,
               const zk::ZkParams& params);

  const AuthRequest& request() const { return request_; }
  // Round 2; returns v1 for the log.
  Scalar OnChallenge(const AuthChallenge& challenge);
  // Checks the opening of v0 and the final signature; throws EcdsaAbort.
  crypto::Signature Finish(const AuthFinishReply& reply);

 private:
  GroupElement pk_;
  AuthRequest request_;
  std::unique_ptr<ecdsa2p::SignParty> party_;
  std::optional<crypto::Commitment> v_commit_;
  Scalar v1_;
};

// Throws ProtocolError with REJECT_INTEGRITY (ct signature) or REJECT_PROOF.
// Proofs with fewer repetitions than `params` asks for are rejected.
void VerifyAuthRequest(const crypto::Commitment& cm, const GroupElement& record_vk,
                       const AuthRequest& request, const zk::ZkParams& params);

// Log half, created after the request has been verified and the presignature
// consumed.
class LogSigner {
 public:
  LogSigner(const ecdsa2p::PresigShare& share, const Scalar& x, const AuthRequest& request);

  const AuthChallenge& challenge() const { return challenge_; }
  // Throws EcdsaAbort unless v0 + v1 = 0.
  AuthFinishReply Finish(const Scalar& v1) const;

 private:
  ecdsa2p::SignParty party_;
  AuthChallenge challenge_;
  Scalar v0_;
  Bytes32 nonce_{};
};

}  // namespace larch::fido2

#endif  // LARCH_PROTOCOL_FIDO2_HPP_
