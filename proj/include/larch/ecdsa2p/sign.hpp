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

#ifndef LARCH_ECDSA2P_SIGN_HPP_
#define LARCH_ECDSA2P_SIGN_HPP_

#include <stdexcept>

#include "larch/crypto/commit.hpp"
#include "larch/crypto/ecdsa.hpp"
#include "larch/ecdsa2p/presign.hpp"

namespace larch::ecdsa2p {

class PresigReuseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Tampering or corruption detected while opening; no signature is released.
class EcdsaAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Round1Msg {
  Scalar d;  // r_i - a_i
  Scalar e;  // key share - b_i

  std::array<uint8_t, 64> Encode() const;
  static Round1Msg Decode(ByteSpan data);  // throws std::invalid_argument
};

// Values a party contributes to the opening step.
struct OpenShare {
  Scalar s, s_hat, d_hat, alpha;
};

// One party (0 = log, 1 = client) of the online signing protocol, bound to a
// single presignature.
class SignParty {
 public:
  SignParty(int index, const PresigShare& share, const Scalar& key_share);

  // Throws PresigReuseError on a second call.
  Round1Msg Round1();
  // Computes s_i, s_hat_i and d_hat_i for digest H(m).
  void Round2(const Round1Msg& other, const Scalar& digest);

  const Round1Msg& own_msg() const { return own_; }
  const Scalar& d() const { return d_; }  // opened d
  const Scalar& e() const { return e_; }
  const Scalar& t() const { return share_.t; }
  OpenShare open_share() const;
  // v_i = d_hat_i - alpha_i * d; the v_i of both parties sum to zero.
  Scalar DCheckShare() const;

 private:
  int index_;
  PresigShare share_;
  Scalar key_share_;
  Round1Msg own_;
  Scalar d_, e_, s_, s_hat_, d_hat_;
  int stage_ = 0;
};

// Random linear-combination coefficient bound to the protocol transcript.
Scalar OpenChallenge(const Round1Msg& m0, const Round1Msg& m1, const Scalar& digest,
                     const Scalar& t);

// Per-party check value u_i = (s_hat_i - alpha_i s) + chi (d_hat_i - alpha_i d).
Scalar CheckValue(const OpenShare& p, const Scalar& s, const Scalar& d, const Scalar& chi);

// Commit-then-reveal opening: each party commits to u_i, both reveal, and the
// signature (t, s0 + s1) is released only if the u_i sum to zero and s != 0.
// Throws EcdsaAbort otherwise.
crypto::Signature OpenCheck(const OpenShare& p0, const OpenShare& p1, const Scalar& d,
                            const Scalar& chi, const Scalar& t);

// Runs both parties in-process; used by tests and local tooling.
crypto::Signature SignLocally(const PresigShare& log_share, const Scalar& x,
                              const PresigShare& client_share, const Scalar& y,
                              const Scalar& digest);

}  // namespace larch::ecdsa2p

#endif  // LARCH_ECDSA2P_SIGN_HPP_
