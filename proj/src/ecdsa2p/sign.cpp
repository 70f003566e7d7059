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

#include "larch/ecdsa2p/sign.hpp"

#include "larch/crypto/hash.hpp"

namespace larch::ecdsa2p {

std::array<uint8_t, 64> Round1Msg::Encode() const {
  std::array<uint8_t, 64> out;
  std::copy(d.bytes().begin(), d.bytes().end(), out.begin());
  std::copy(e.bytes().begin(), e.bytes().end(), out.begin() + 32);
  return out;
}

Round1Msg Round1Msg::Decode(ByteSpan data) {
  if (data.size() != 64) throw std::invalid_argument("round-1 message must be 64 bytes");
  return {Scalar::Parse(data.subspan(0, 32)), Scalar::Parse(data.subspan(32, 32))};
}

SignParty::SignParty(int index, const PresigShare& share, const Scalar& key_share)
    : index_(index), share_(share), key_share_(key_share) {
  if (index != 0 && index != 1) throw std::invalid_argument("party index must be 0 or 1");
  if (share.t.IsZero()) throw std::invalid_argument("void presignature");
}

Round1Msg SignParty::Round1() {
  if (stage_ != 0) throw PresigReuseError("presignature already consumed");
  stage_ = 1;
  own_ = {share_.r - share_.a, key_share_ - share_.b};
  return own_;
}

void SignParty::Round2(const Round1Msg& other, const Scalar& digest) {
  if (stage_ != 1) throw std::logic_error("Round2 requires exactly one prior Round1");
  stage_ = 2;
  d_ = own_.d + other.d;
  e_ = own_.e + other.e;
  const Scalar de = d_ * e_;
  Scalar z = d_ * share_.b + e_ * share_.a + share_.c;
  if (index_ == 0) z += de;
  const Scalar z_hat = de * share_.alpha + d_ * share_.g + e_ * share_.f + share_.h;
  s_ = share_.r * digest + z * share_.t;
  s_hat_ = share_.rhat * digest + z_hat * share_.t;
  d_hat_ = share_.rhat - share_.f;
}

OpenShare SignParty::open_share() const {
  if (stage_ != 2) throw std::logic_error("Round2 not completed");
  return {s_, s_hat_, d_hat_, share_.alpha};
}

Scalar SignParty::DCheckShare() const {
  if (stage_ != 2) throw std::logic_error("Round2 not completed");
  return d_hat_ - share_.alpha * d_;
}

Scalar OpenChallenge(const Round1Msg& m0, const Round1Msg& m1, const Scalar& digest,
                     const Scalar& t) {
  crypto::Sha256Hasher h;
  h.Update(std::string_view("larch-ecdsa2p-open"))
      .Update(m0.Encode())
      .Update(m1.Encode())
      .Update(digest.bytes())
      .Update(t.bytes());
  return Scalar::FromBytesReduce(h.Final());
}

Scalar CheckValue(const OpenShare& p, const Scalar& s, const Scalar& d, const Scalar& chi) {
  return (p.s_hat - p.alpha * s) + chi * (p.d_hat - p.alpha * d);
}

crypto::Signature OpenCheck(const OpenShare& p0, const OpenShare& p1, const Scalar& d,
                            const Scalar& chi, const Scalar& t) {
  const Scalar s = p0.s + p1.s;
  const Scalar u0 = CheckValue(p0, s, d, chi);
  const Scalar u1 = CheckValue(p1, s, d, chi);
  // Both commit before either reveals.
  const Bytes32 n0 = crypto::RandomArray<32>(), n1 = crypto::RandomArray<32>();
  const crypto::Commitment c0 = crypto::Commit(u0.bytes(), n0);
  const crypto::Commitment c1 = crypto::Commit(u1.bytes(), n1);
  if (!crypto::VerifyCommitment(c0, u0.bytes(), n0) ||
      !crypto::VerifyCommitment(c1, u1.bytes(), n1)) {
    throw EcdsaAbort("check-value opening does not match commitment");
  }
  if (!(u0 + u1).IsZero()) throw EcdsaAbort("MAC check failed");
  if (s.IsZero() || t.IsZero()) throw EcdsaAbort("degenerate signature");
  return crypto::Signature{t, s};
}

crypto::Signature SignLocally(const PresigShare& log_share, const Scalar& x,
                              const PresigShare& client_share, const Scalar& y,
                              const Scalar& digest) {
  SignParty log(0, log_share, x);
  SignParty client(1, client_share, y);
  const Round1Msg m0 = log.Round1();
  const Round1Msg m1 = client.Round1();
  log.Round2(m1, digest);
  client.Round2(m0, digest);
  const Scalar chi = OpenChallenge(m0, m1, digest, log_share.t);
  return OpenCheck(log.open_share(), client.open_share(), log.d(), chi, log_share.t);
}

}  // namespace larch::ecdsa2p
