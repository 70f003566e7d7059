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

#include "larch/protocol/fido2.hpp"

#include "larch/circuit/fido2_circuit.hpp"
#include "larch/crypto/chacha20.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/protocol/records.hpp"

namespace larch::fido2 {

using protocol::Mechanism;
using protocol::ProtocolError;

const circuit::BooleanCircuit& Fido2Circuit() {
  static const circuit::BooleanCircuit c = circuit::BuildFido2Circuit();
  return c;
}

Bytes32 Digest(const Bytes32& rp_id, const Bytes32& chal) {
  return crypto::Sha256(Concat({rp_id, chal}));
}

Bytes SignedMessage(std::string_view rp_name, const Bytes32& chal) {
  return Concat({circuit::Fido2RpId(rp_name), chal});
}

Ciphertext EncryptRpId(const Bytes32& k, const std::array<uint8_t, 12>& nonce,
                       const Bytes32& rp_id) {
  const Bytes body = crypto::StreamEncrypt(k, nonce, rp_id);
  Ciphertext ct;
  std::copy(nonce.begin(), nonce.end(), ct.begin());
  std::copy(body.begin(), body.end(), ct.begin() + 12);
  return ct;
}

Bytes32 DecryptRpId(const Bytes32& k, const Ciphertext& ct) {
  const ByteSpan span(ct);
  return ToArray<32>(crypto::StreamDecrypt(k, span.subspan(0, 12), span.subspan(12)));
}

Bytes ProofContext(uint64_t index) {
  ByteWriter w;
  w.Raw(ToBytes("larch-fido2-auth-v1"));
  w.U64(index);
  return w.Take();
}

ClientSigner::ClientSigner(const protocol::ArchiveKey& archive, const Scalar& record_sk,
                           std::string_view rp_name, const Scalar& y, const GroupElement& pk,
                           const Bytes32& chal, uint64_t index,
                           const ecdsa2p::PresigShare& share, const zk::ZkParams& params)
    : pk_(pk) {
  circuit::Fido2Witness w;
  w.k = archive.k;
  w.r = archive.r;
  w.id = circuit::Fido2RpId(rp_name);
  w.chal = chal;
  w.nonce = crypto::RandomArray<12>();

  request_.index = index;
  request_.dgst = Digest(w.id, chal);
  request_.ct = EncryptRpId(archive.k, w.nonce, w.id);
  const circuit::Fido2Public pub{archive.cm.digest, request_.ct, request_.dgst};
  request_.proof = zk::Prove(Fido2Circuit(), circuit::Fido2WitnessBits(w),
                             circuit::Fido2PublicBits(pub), params, ProofContext(index))
                       .Serialize();
  request_.ct_sig = protocol::SignRecord(record_sk, Mechanism::kFido2, request_.ct);
  party_ = std::make_unique<ecdsa2p::SignParty>(1, share, y);
  request_.round1 = party_->Round1();
}

Scalar ClientSigner::OnChallenge(const AuthChallenge& challenge) {
  party_->Round2(challenge.round1, crypto::DigestToScalar(request_.dgst));
  v_commit_ = challenge.v_commit;
  v1_ = party_->DCheckShare();
  return v1_;
}

crypto::Signature ClientSigner::Finish(const AuthFinishReply& reply) {
  if (!v_commit_) throw std::logic_error("Finish before OnChallenge");
  if (!crypto::VerifyCommitment(*v_commit_, reply.v.bytes(), reply.v_nonce)) {
    throw ecdsa2p::EcdsaAbort("log opening does not match its commitment");
  }
  if (!(reply.v + v1_).IsZero()) throw ecdsa2p::EcdsaAbort("d-opening check failed");
  const crypto::Signature sig{party_->t(), reply.s + party_->open_share().s};
  if (!crypto::EcdsaVerifyDigest(pk_, crypto::DigestToScalar(request_.dgst), sig)) {
    throw ecdsa2p::EcdsaAbort("combined signature does not verify");
  }
  return sig;
}

void VerifyAuthRequest(const crypto::Commitment& cm, const GroupElement& record_vk,
                       const AuthRequest& request, const zk::ZkParams& params) {
  if (!protocol::VerifyRecordSignature(record_vk, Mechanism::kFido2, request.ct,
                                       request.ct_sig)) {
    throw ProtocolError(protocol::kRejectIntegrity, "ciphertext signature invalid");
  }
  zk::MpcProof proof;
  try {
    proof = zk::MpcProof::Deserialize(request.proof);
  } catch (const std::exception&) {
    throw ProtocolError(protocol::kRejectProof, "malformed proof");
  }
  if (proof.reps.size() < params.reps) {
    throw ProtocolError(protocol::kRejectProof, "too few proof repetitions");
  }
  const circuit::Fido2Public pub{cm.digest, request.ct, request.dgst};
  if (!zk::Verify(Fido2Circuit(), circuit::Fido2PublicBits(pub), proof,
                  ProofContext(request.index))) {
    throw ProtocolError(protocol::kRejectProof, "zero-knowledge proof rejected");
  }
}

LogSigner::LogSigner(const ecdsa2p::PresigShare& share, const Scalar& x,
                     const AuthRequest& request)
    : party_(0, share, x) {
  challenge_.round1 = party_.Round1();
  party_.Round2(request.round1, crypto::DigestToScalar(request.dgst));
  v0_ = party_.DCheckShare();
  nonce_ = crypto::RandomArray<32>();
  challenge_.v_commit = crypto::Commit(v0_.bytes(), nonce_);
}

AuthFinishReply LogSigner::Finish(const Scalar& v1) const {
  if (!(v0_ + v1).IsZero()) throw ecdsa2p::EcdsaAbort("d-opening check failed");
  return {v0_, nonce_, party_.open_share().s};
}

}  // namespace larch::fido2
