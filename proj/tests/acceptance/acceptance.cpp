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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles are computed independently where the library
// would otherwise check itself (OpenSSL for ECDSA, plain interpreters and the
// reference HMAC for circuits).

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "larch/circuit/builder.hpp"
#include "larch/circuit/fido2_circuit.hpp"
#include "larch/circuit/totp_circuit.hpp"
#include "larch/client/http_transport.hpp"
#include "larch/crypto/ecdsa.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/ecdsa2p/keys.hpp"
#include "larch/ecdsa2p/presign.hpp"
#include "larch/ecdsa2p/sign.hpp"
#include "larch/gc/garble.hpp"
#include "larch/protocol/fido2.hpp"
#include "larch/protocol/pw.hpp"
#include "larch/protocol/totp.hpp"
#include "larch/protocol/wire.hpp"
#include "larch/zk/mpcith.hpp"
#include "testing/harness.hpp"
#include "testing/reference.hpp"

namespace larch {
namespace {

using crypto::GroupElement;
using crypto::Scalar;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check; the first few reasons are kept.
  void Check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || failures < 3) detail << " [fail: " << what << "]";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::mt19937_64& Rng() {
  static std::mt19937_64 rng(std::random_device{}());
  return rng;
}

// ---------------------------------------------------------------- OpenSSL --

// Verifies (r, s) over a 32-byte digest with OpenSSL's own ECDSA.
bool OpensslVerify(const GroupElement& pk, const Bytes32& digest, const crypto::Signature& sig) {
  const Bytes pub = pk.ToBytes();
  OSSL_PARAM_BLD* bld = OSSL_PARAM_BLD_new();
  OSSL_PARAM_BLD_push_utf8_string(bld, OSSL_PKEY_PARAM_GROUP_NAME, "prime256v1", 0);
  OSSL_PARAM_BLD_push_octet_string(bld, OSSL_PKEY_PARAM_PUB_KEY, pub.data(), pub.size());
  OSSL_PARAM* params = OSSL_PARAM_BLD_to_param(bld);
  EVP_PKEY_CTX* kctx = EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr);
  EVP_PKEY* key = nullptr;
  bool ok = EVP_PKEY_fromdata_init(kctx) == 1 &&
            EVP_PKEY_fromdata(kctx, &key, EVP_PKEY_PUBLIC_KEY, params) == 1;

  ECDSA_SIG* s = ECDSA_SIG_new();
  ECDSA_SIG_set0(s, BN_bin2bn(sig.r.bytes().data(), 32, nullptr),
                 BN_bin2bn(sig.s.bytes().data(), 32, nullptr));
  unsigned char* der = nullptr;
  const int der_len = i2d_ECDSA_SIG(s, &der);
  EVP_PKEY_CTX* vctx = ok ? EVP_PKEY_CTX_new_from_pkey(nullptr, key, nullptr) : nullptr;
  ok = ok && der_len > 0 && EVP_PKEY_verify_init(vctx) == 1 &&
       EVP_PKEY_verify(vctx, der, static_cast<size_t>(der_len), digest.data(), 32) == 1;

  OPENSSL_free(der);
  ECDSA_SIG_free(s);
  EVP_PKEY_CTX_free(vctx);
  EVP_PKEY_free(key);
  EVP_PKEY_CTX_free(kctx);
  OSSL_PARAM_free(params);
  OSSL_PARAM_BLD_free(bld);
  return ok;
}

// x-coordinate of g^k reduced mod q, via OpenSSL.
Scalar OpensslConversion(const Scalar& k) {
  EC_GROUP* group = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
  EC_POINT* p = EC_POINT_new(group);
  BIGNUM* kb = BN_bin2bn(k.bytes().data(), 32, nullptr);
  BIGNUM* x = BN_new();
  BIGNUM* q = BN_new();
  BN_CTX* ctx = BN_CTX_new();
  EC_POINT_mul(group, p, kb, nullptr, nullptr, ctx);
  EC_POINT_get_affine_coordinates(group, p, x, nullptr, ctx);
  EC_GROUP_get_order(group, q, ctx);
  BN_mod(x, x, q, ctx);
  Bytes32 out{};
  BN_bn2binpad(x, out.data(), 32);
  BN_CTX_free(ctx);
  BN_free(q);
  BN_free(x);
  BN_free(kb);
  EC_POINT_free(p);
  EC_GROUP_free(group);
  return Scalar::Parse(out);
}

Bytes32 RefDigest(ByteSpan m) {
  const auto d = testing::RefSha256(testing::RefBytes(m.begin(), m.end()));
  Bytes32 out{};
  std::copy(d.begin(), d.end(), out.begin());
  return out;
}

// ----------------------------------------------------------------- AC1 ----

void Ac1(Outcome& o) {
  constexpr size_t kTrials = 1000;
  const auto batch = ecdsa2p::PresignBatch(kTrials, crypto::RandomArray<32>());
  size_t exact = 0, verified = 0;
  for (size_t i = 0; i < kTrials; ++i) {
    const auto log_key = ecdsa2p::LogSigningKey::Generate();
    const auto cred = ecdsa2p::ClientCredentialKey::Generate(log_key.X);
    Bytes msg(1 + Rng()() % 200);
    for (auto& b : msg) b = static_cast<uint8_t>(Rng()());
    const Bytes32 h = RefDigest(msg);
    const Scalar digest = Scalar::FromBytesReduce(h);
    const auto ls = batch.log.Share(i);
    const auto cs = batch.client.Share(i);
    const auto sig = ecdsa2p::SignLocally(ls, log_key.x, cs, cred.y, digest);

    // Direct formula: r^-1 (H(m) + f(g^r) (x + y)) with r^-1 = r0 + r1.
    const Scalar rinv = ls.r + cs.r;
    const Scalar t = OpensslConversion(rinv.Inverse());
    const Scalar s = rinv * (digest + t * (log_key.x + cred.y));
    if (sig.r == t && sig.s == s) ++exact;
    if (cred.pk == GroupElement::BaseMul(log_key.x + cred.y) && OpensslVerify(cred.pk, h, sig)) {
      ++verified;
    }
  }
  o.Check(exact == kTrials, "formula mismatch");
  o.Check(verified == kTrials, "OpenSSL verification failed");
  o.detail << " " << exact << "/" << kTrials << " exact, " << verified << "/" << kTrials
           << " verify";
}

// ----------------------------------------------------------------- AC2 ----

Scalar NonZeroShift() { return Scalar::RandomNonZero(); }

void Ac2(Outcome& o) {
  constexpr size_t kTrials = 1000;
  const auto batch = ecdsa2p::PresignBatch(kTrials, crypto::RandomArray<32>());
  size_t d_aborts = 0, s_aborts = 0, honest_ok = 0;
  for (size_t i = 0; i < kTrials; ++i) {
    const auto log_key = ecdsa2p::LogSigningKey::Generate();
    const auto cred = ecdsa2p::ClientCredentialKey::Generate(log_key.X);
    const Scalar digest = Scalar::Random();
    const auto ls = batch.log.Share(i);
    const auto cs = batch.client.Share(i);

    {  // (i) the client shifts its authenticated d-share on the wire
      ecdsa2p::SignParty p0(0, ls, log_key.x), p1(1, cs, cred.y);
      const auto m0 = p0.Round1();
      auto m1 = p1.Round1();
      m1.d += NonZeroShift();
      p0.Round2(m1, digest);
      p1.Round2(m0, digest);
      const Scalar chi = ecdsa2p::OpenChallenge(m0, m1, digest, ls.t);
      try {
        ecdsa2p::OpenCheck(p0.open_share(), p1.open_share(), p0.d(), chi, ls.t);
      } catch (const ecdsa2p::EcdsaAbort&) {
        ++d_aborts;
      }
    }
    {  // (ii) one party shifts its s-share at opening
      ecdsa2p::SignParty p0(0, ls, log_key.x), p1(1, cs, cred.y);
      const auto m0 = p0.Round1(), m1 = p1.Round1();
      p0.Round2(m1, digest);
      p1.Round2(m0, digest);
      const Scalar chi = ecdsa2p::OpenChallenge(m0, m1, digest, ls.t);
      auto bad = (i % 2 ? p0 : p1).open_share();
      bad.s += NonZeroShift();
      try {
        if (i % 2) {
          ecdsa2p::OpenCheck(bad, p1.open_share(), p0.d(), chi, ls.t);
        } else {
          ecdsa2p::OpenCheck(p0.open_share(), bad, p0.d(), chi, ls.t);
        }
      } catch (const ecdsa2p::EcdsaAbort&) {
        ++s_aborts;
      }
      // Control: the honest opening of the same run succeeds.
      try {
        ecdsa2p::OpenCheck(p0.open_share(), p1.open_share(), p0.d(), chi, ls.t);
        ++honest_ok;
      } catch (const ecdsa2p::EcdsaAbort&) {
      }
    }
  }
  o.Check(d_aborts == kTrials, "shifted d-share released a signature");
  o.Check(s_aborts == kTrials, "shifted s-share released a signature");
  o.Check(honest_ok == kTrials, "honest control aborted");
  o.detail << " d-shift " << d_aborts << "/" << kTrials << ", s-shift " << s_aborts << "/"
           << kTrials << " aborted";
}

// ----------------------------------------------------------------- AC3 ----

struct Fido2Statement {
  std::vector<uint8_t> witness;
  std::vector<uint8_t> publics;
};

Fido2Statement HonestFido2Statement() {
  circuit::Fido2Witness w;
  w.k = crypto::RandomArray<32>();
  w.r = crypto::RandomArray<32>();
  w.id = circuit::Fido2RpId("rp-" + std::to_string(Rng()() % 100000) + ".example");
  w.chal = crypto::RandomArray<32>();
  w.nonce = crypto::RandomArray<12>();
  circuit::Fido2Public pub;
  testing::RefBytes kr(w.k.begin(), w.k.end());
  kr.insert(kr.end(), w.r.begin(), w.r.end());
  const auto cm = testing::RefSha256(kr);
  std::copy(cm.begin(), cm.end(), pub.cm.begin());
  const auto body = testing::RefChaCha20Xor(testing::RefBytes(w.k.begin(), w.k.end()),
                                            testing::RefBytes(w.nonce.begin(), w.nonce.end()),
                                            0, testing::RefBytes(w.id.begin(), w.id.end()));
  std::copy(w.nonce.begin(), w.nonce.end(), pub.ct.begin());
  std::copy(body.begin(), body.end(), pub.ct.begin() + 12);
  testing::RefBytes ic(w.id.begin(), w.id.end());
  ic.insert(ic.end(), w.chal.begin(), w.chal.end());
  const auto d = testing::RefSha256(ic);
  std::copy(d.begin(), d.end(), pub.dgst.begin());
  return {circuit::Fido2WitnessBits(w), circuit::Fido2PublicBits(pub)};
}

void Ac3(Outcome& o) {
  constexpr size_t kTrials = 200;
  const auto& c = fido2::Fido2Circuit();
  const zk::ZkParams test = zk::ZkParams::Test();
  // Public bit ranges: cm [0, 256), ct [256, 608), dgst [608, 864).
  const std::pair<size_t, size_t> ranges[] = {{0, 256}, {256, 608}, {608, 864}};
  size_t complete = 0;
  size_t rejected[4] = {0, 0, 0, 0};
  for (size_t i = 0; i < kTrials; ++i) {
    const auto s = HonestFido2Statement();
    const auto proof = zk::Prove(c, s.witness, s.publics, test);
    if (proof.reps.size() == test.reps && zk::Verify(c, s.publics, proof)) ++complete;
    for (size_t k = 0; k < 3; ++k) {
      auto p = s.publics;
      const size_t span = ranges[k].second - ranges[k].first;
      p[ranges[k].first + Rng()() % span] ^= 1;
      if (!zk::Verify(c, p, proof)) ++rejected[k];
    }
    auto bad = proof;
    auto& view = bad.reps[Rng()() % bad.reps.size()].view;
    view[Rng()() % view.size()] ^= static_cast<uint8_t>(1 + Rng()() % 255);
    if (!zk::Verify(c, s.publics, bad)) ++rejected[3];
  }
  o.Check(complete == kTrials, "honest proof rejected");
  const char* names[] = {"cm bit", "ct bit", "dgst bit", "view byte"};
  for (size_t k = 0; k < 4; ++k) o.Check(rejected[k] == kTrials, names[k]);

  // (2/3)^137 < 2^-80, computed directly and through the profile.
  const double bits = 137.0 * std::log2(1.5);
  const zk::ZkParams prod = zk::ZkParams::FromProfile("prod");
  o.Check(prod.reps == 137, "prod profile reps");
  o.Check(bits > 80.0 && prod.SoundnessBits() > 80.0, "prod soundness below 80 bits");
  o.detail << " complete " << complete << "/" << kTrials << "; rejected cm " << rejected[0]
           << ", ct " << rejected[1] << ", dgst " << rejected[2] << ", view " << rejected[3]
           << "; prod soundness 2^-" << std::fixed << std::setprecision(2) << bits;
}

// ----------------------------------------------------------------- AC4 ----

// Straight interpreter over the gate list, independent of EvalPlaintext.
std::vector<uint8_t> Interpret(const circuit::BooleanCircuit& c, const std::vector<uint8_t>& in) {
  std::vector<uint8_t> w(c.wire_count, 0);
  std::copy(in.begin(), in.end(), w.begin());
  for (const auto& g : c.gates) {
    switch (g.op) {
      case circuit::GateOp::kXor: w[g.out] = w[g.in0] ^ w[g.in1]; break;
      case circuit::GateOp::kAnd: w[g.out] = w[g.in0] & w[g.in1]; break;
      case circuit::GateOp::kInv: w[g.out] = w[g.in0] ^ 1; break;
    }
  }
  return std::vector<uint8_t>(w.end() - static_cast<ptrdiff_t>(c.num_outputs()), w.end());
}

std::vector<uint8_t> GarbledRun(const circuit::BooleanCircuit& c, const gc::Garbling& g,
                                const std::vector<uint8_t>& in) {
  std::vector<gc::Label> labels(in.size());
  for (size_t i = 0; i < in.size(); ++i) labels[i] = g.InputLabel(i, in[i]);
  const auto out = gc::Evaluate(c, g.tables, labels);
  std::vector<uint8_t> bits;
  size_t off = 0;
  for (const auto& m : g.decode_maps) {
    std::vector<gc::Label> part(out.begin() + static_cast<ptrdiff_t>(off),
                                out.begin() + static_cast<ptrdiff_t>(off + m.entries.size()));
    const auto b = gc::Decode(m, part);
    bits.insert(bits.end(), b.begin(), b.end());
    off += m.entries.size();
  }
  return bits;
}

struct SmallCircuit {
  std::string name;
  circuit::BooleanCircuit c;
  // Optional semantic oracle over the input bits.
  std::function<std::vector<uint8_t>(const std::vector<uint8_t>&)> oracle;
};

std::vector<SmallCircuit> SmallCircuits() {
  std::vector<SmallCircuit> out;
  out.push_back({"and", circuit::ParseBristol("1 3\n2 1 1\n1 1\n2 1 0 1 2 AND\n"),
                 [](const auto& in) { return std::vector<uint8_t>{uint8_t(in[0] & in[1])}; }});
  out.push_back({"xor", circuit::ParseBristol("1 3\n2 1 1\n1 1\n2 1 0 1 2 XOR\n"),
                 [](const auto& in) { return std::vector<uint8_t>{uint8_t(in[0] ^ in[1])}; }});
  out.push_back({"inv", circuit::ParseBristol("1 2\n1 1\n1 1\n1 1 0 1 INV\n"),
                 [](const auto& in) { return std::vector<uint8_t>{uint8_t(in[0] ^ 1)}; }});
  {  // 5-bit adder, MSB first, 6-bit sum
    circuit::CircuitBuilder b;
    const auto x = b.AddInput(5), y = b.AddInput(5);
    std::vector<circuit::Wire> sum(6);
    circuit::Wire carry = circuit::kZero;
    for (size_t i = 5; i-- > 0;) {
      const auto axb = b.Xor(x[i], y[i]);
      sum[i + 1] = b.Xor(axb, carry);
      carry = b.Or(b.And(x[i], y[i]), b.And(axb, carry));
    }
    sum[0] = carry;
    b.AddOutput(sum);
    out.push_back({"adder5", b.Build(), [](const auto& in) {
                     uint64_t a = 0, c = 0;
                     for (size_t i = 0; i < 5; ++i) a = a << 1 | in[i];
                     for (size_t i = 5; i < 10; ++i) c = c << 1 | in[i];
                     return circuit::UintToBits(a + c, 6);
                   }});
  }
  {  // 3-bit equality and 4:1 mux
    circuit::CircuitBuilder b;
    const auto x = b.AddInput(3), y = b.AddInput(3), sel = b.AddInput(2), data = b.AddInput(2);
    auto eq = circuit::kOne;
    for (size_t i = 0; i < 3; ++i) eq = b.And(eq, b.Not(b.Xor(x[i], y[i])));
    const auto lo = b.Mux(sel[1], data[0], data[1]);
    const auto hi = b.Mux(sel[1], x[0], y[0]);
    const std::vector<circuit::Wire> o1{eq};
    const std::vector<circuit::Wire> o2{b.Mux(sel[0], lo, hi)};
    b.AddOutput(o1);
    b.AddOutput(o2);
    out.push_back({"eq-mux", b.Build(), nullptr});
  }
  for (size_t nin = 1; nin <= 10; ++nin) {  // random gate soups
    circuit::CircuitBuilder b;
    auto pool = b.AddInput(nin);
    for (int i = 0; i < 40; ++i) {
      const auto a = pool[Rng()() % pool.size()], c = pool[Rng()() % pool.size()];
      switch (Rng()() % 3) {
        case 0: pool.push_back(b.Xor(a, c)); break;
        case 1: pool.push_back(b.And(a, c)); break;
        default: pool.push_back(b.Not(a)); break;
      }
    }
    const std::vector<circuit::Wire> o(pool.end() - 4, pool.end());
    b.AddOutput(o);
    out.push_back({"random" + std::to_string(nin), b.Build(), nullptr});
  }
  return out;
}

void Ac4(Outcome& o) {
  size_t circuits = 0, evaluations = 0;
  for (const auto& sc : SmallCircuits()) {
    const size_t nin = sc.c.num_inputs();
    if (nin > 10) continue;
    ++circuits;
    const gc::Garbling g = gc::Garble(sc.c, crypto::RandomArray<32>());
    for (uint32_t v = 0; v < (1u << nin); ++v) {
      std::vector<uint8_t> in(nin);
      for (size_t i = 0; i < nin; ++i) in[i] = (v >> (nin - 1 - i)) & 1;
      const auto want = sc.oracle ? sc.oracle(in) : Interpret(sc.c, in);
      if (sc.oracle) o.Check(Interpret(sc.c, in) == want, sc.name + " interpreter");
      o.Check(GarbledRun(sc.c, g, in) == want, sc.name + " input " + std::to_string(v));
      ++evaluations;
    }
  }

  // TOTP at 16 slots: direct garble and evaluate for 100 random (key, t).
  circuit::CircuitParams p;
  p.totp_slots = 16;
  const auto c = circuit::BuildTotpCircuit(p);
  size_t codes_ok = 0;
  constexpr size_t kCodes = 100;
  for (size_t trial = 0; trial < kCodes; ++trial) {
    Bytes key(1 + Rng()() % 32);
    for (auto& b : key) b = static_cast<uint8_t>(Rng()());
    const uint64_t t = Rng()() % (uint64_t{1} << 40);
    const auto split = totp::SplitKey(key);
    circuit::TotpClientInput ci;
    circuit::TotpLogInput li;
    ci.k = crypto::RandomArray<32>();
    ci.r = crypto::RandomArray<32>();
    ci.nonce = crypto::RandomArray<12>();
    ci.kclient = split.kclient;
    li.cm = crypto::Commit(ci.k, ci.r).digest;
    li.t = t;
    const size_t slot = Rng()() % 16;
    for (size_t j = 0; j < 16; ++j) {
      li.ids.push_back(crypto::RandomArray<16>());
      li.klogs.push_back(j == slot ? split.klog : crypto::RandomArray<32>());
    }
    ci.id = li.ids[slot];
    std::vector<uint8_t> in = circuit::TotpClientBits(ci);
    const auto log_bits = circuit::TotpLogBits(li, p);
    in.insert(in.end(), log_bits.begin(), log_bits.end());
    const gc::Garbling g = gc::Garble(c, crypto::RandomArray<32>());
    const auto out = GarbledRun(c, g, in);
    const std::span<const uint8_t> bits(out);
    const uint32_t code = circuit::DecodeTotpCode(bits.subspan(0, 31));
    const auto log_out = circuit::DecodeTotpLogOutput(bits.subspan(31));
    const testing::RefBytes ref_key(key.begin(), key.end());
    char expect[8];
    std::snprintf(expect, sizeof(expect), "%06u", testing::RefTotp(ref_key, t, 6));
    if (code == testing::RefTotpTruncated(ref_key, t) && totp::RenderCode(code) == expect &&
        log_out.valid) {
      ++codes_ok;
    }
  }
  o.Check(codes_ok == kCodes, "TOTP code mismatch");

  // Full two-party sessions through the log service, at most five.
  testing::TestLog log;
  auto vault = client::Client::Enroll(log.transport(), "loopback", {0});
  client::Client cl(log.transport(), vault);
  size_t sessions_ok = 0;
  constexpr size_t kSessions = 3;
  std::vector<Bytes> keys;
  for (size_t j = 0; j < 16; ++j) {
    Bytes key(20 + j % 13);
    for (auto& b : key) b = static_cast<uint8_t>(Rng()());
    keys.push_back(key);
    cl.TotpRegister("rp" + std::to_string(j), key);
  }
  for (size_t s = 0; s < kSessions; ++s) {
    const size_t j = Rng()() % 16;
    const uint64_t t = log.now_step();
    const std::string code = cl.TotpAuth("rp" + std::to_string(j), t);
    char expect[8];
    std::snprintf(expect, sizeof(expect), "%06u",
                  testing::RefTotp(testing::RefBytes(keys[j].begin(), keys[j].end()), t, 6));
    if (code == expect) ++sessions_ok;
  }
  o.Check(sessions_ok == kSessions, "TOTP session mismatch");
  o.detail << " " << circuits << " small circuits, " << evaluations
           << " exhaustive evaluations; TOTP n=16 direct " << codes_ok << "/" << kCodes
           << ", sessions " << sessions_ok << "/" << kSessions;
}

// ----------------------------------------------------------------- AC5 ----

void Ac5(Outcome& o) {
  testing::TestLog log;
  auto vault = client::Client::Enroll(log.transport(), "loopback", {0});
  client::Client cl(log.transport(), vault);
  constexpr size_t kRps = 200;
  std::vector<std::string> issued;
  for (size_t i = 0; i < kRps; ++i) issued.push_back(cl.PwRegister("site" + std::to_string(i)));
  o.Check(std::set<std::string>(issued.begin(), issued.end()).size() == kRps,
          "repeated password");
  size_t same = 0;
  for (size_t i = 0; i < kRps; ++i) {
    if (cl.PwAuth("site" + std::to_string(i)) == issued[i]) ++same;
  }
  o.Check(same == kRps, "auth differs from register");

  size_t legacy_ok = 0;
  const std::vector<std::string> legacy = {"a", "hunter2", "correct horse battery staple",
                                           std::string(28, 'z'), "p\xc3\xa4ss w0rd!"};
  for (size_t i = 0; i < legacy.size(); ++i) {
    const std::string rp = "legacy" + std::to_string(i);
    if (cl.PwImport(rp, legacy[i]) == legacy[i] && cl.PwAuth(rp) == legacy[i]) ++legacy_ok;
  }
  o.Check(legacy_ok == legacy.size(), "legacy round trip");

  // Serialized (ct, pi1, pi2) sizes from the protocol module.
  const auto keys = pw::ClientKeys::Generate();
  auto size_at = [&](size_t n) {
    std::vector<GroupElement> list;
    pw::PwId id = crypto::RandomArray<16>();
    for (size_t i = 0; i < n; ++i) {
      list.push_back(i == n / 3 ? pw::HashId(id) : GroupElement::Random());
    }
    return pw::BuildAuthRequest(keys, id, list, 1).request.Serialize().size();
  };
  const size_t at512 = size_at(512);
  o.Check(at512 <= 8192, "size at 512 above 8 KiB");
  std::vector<size_t> sizes;
  for (size_t n : {8, 16, 32, 64}) sizes.push_back(size_at(n));
  const size_t step = sizes[1] - sizes[0];
  for (size_t i = 2; i < sizes.size(); ++i) {
    o.Check(sizes[i] - sizes[i - 1] == step, "doubling increment varies");
  }
  o.detail << " " << same << "/" << kRps << " stable, legacy " << legacy_ok << "/"
           << legacy.size() << ", size(512) = " << at512 << " B, increment " << step
           << " B per doubling";
}

// ----------------------------------------------------------------- AC6 ----

void Ac6(Outcome& o) {
  testing::TestLog log;
  auto vault = client::Client::Enroll(log.transport(), "loopback", {16});
  client::Client cl(log.transport(), vault);
  for (const char* rp : {"f-alpha", "f-beta", "f-gamma"}) cl.Fido2Register(rp);
  for (const char* rp : {"t-alpha", "t-beta"}) cl.TotpRegister(rp, crypto::RandomArray<20>());
  for (const char* rp : {"p-alpha", "p-beta", "p-gamma"}) cl.PwRegister(rp);

  std::vector<std::string> script;
  for (const char* rp : {"f-beta", "f-alpha", "f-beta", "f-gamma", "f-alpha"}) {
    cl.Fido2Auth(rp, crypto::RandomArray<32>());
    script.push_back(rp);
  }
  for (const char* rp : {"t-beta", "t-alpha", "t-alpha", "t-beta", "t-beta"}) {
    cl.TotpAuth(rp, log.now_step());
    script.push_back(rp);
  }
  for (const char* rp : {"p-gamma", "p-alpha", "p-beta", "p-gamma", "p-gamma"}) {
    cl.PwAuth(rp);
    script.push_back(rp);
  }
  auto report = cl.Audit();
  std::vector<std::string> seen;
  for (const auto& e : report.entries) seen.push_back(e.rp);
  o.Check(seen == script, "audit order differs from the script");
  o.Check(!report.any_flagged(), "honest history flagged");

  // Tamper with one record of each mechanism at rest.
  std::set<size_t> tampered;
  for (size_t seq : {2, 7, 13}) {
    testing::TamperRecordAtRest(log.JournalPath(), seq);
    tampered.insert(seq);
  }
  log.Restart();
  report = cl.Audit();
  size_t flagged_right = 0, clean_right = 0;
  for (size_t i = 0; i < report.entries.size(); ++i) {
    const bool flagged = report.entries[i].flagged;
    if (tampered.count(i) && flagged) ++flagged_right;
    if (!tampered.count(i) && !flagged && report.entries[i].rp == script[i]) ++clean_right;
  }
  o.Check(report.entries.size() == script.size(), "record count after tamper");
  o.Check(flagged_right == tampered.size(), "tampered record not flagged");
  o.Check(clean_right == script.size() - tampered.size(), "untouched record changed");
  o.detail << " " << script.size() << " scripted auths reproduced in order; " << flagged_right
           << "/" << tampered.size() << " tampered records flagged";
}

// ----------------------------------------------------------------- AC7 ----

void Ac7(Outcome& o) {
  testing::TestLog log;
  auto vault = client::Client::Enroll(log.transport(), "loopback", {2});
  client::Client cl(log.transport(), vault);
  cl.Fido2Register("f");
  cl.Fido2Auth("f", crypto::RandomArray<32>());
  cl.TotpRegister("t", crypto::RandomArray<20>());
  cl.TotpAuth("t", log.now_step());
  cl.PwRegister("p");
  cl.PwAuth("p");

  HttpRequest req;
  req.path = "/audit";
  req.bearer = vault.token;
  req.body = "{}";
  const auto res = wire::ParseBody(log.transport().Send(req).body);
  const size_t target[] = {104, 88, 138};
  size_t i = 0;
  for (const auto& j : res.at("records")) {
    const auto rec = wire::RecordFromJson(j);
    const size_t size = rec.Payload().size();
    o.detail << " " << protocol::MechanismName(rec.mech) << " " << size << " B (vs "
             << target[i] << ");";
    o.Check(size <= 2 * target[i] && 2 * size >= target[i], "record size out of range");
    ++i;
  }
  o.Check(i == 3, "expected three records");

  const auto batch = ecdsa2p::PresignBatch(4, crypto::RandomArray<32>());
  const size_t entry = batch.log.entries[0].Encode().size();
  const size_t per_entry = (batch.log.Serialize().size() -
                            ecdsa2p::PresignBatch(3, crypto::RandomArray<32>()).log.Serialize().size());
  o.Check(entry == 192 && per_entry == 192, "log presignature half not 192 B");
  o.detail << " log presignature " << entry << " B";
}

// ----------------------------------------------------------------- AC8 ----

void Ac8(Outcome& o) {
  constexpr size_t kParallel = 64;
  testing::TestLog log;
  auto vault = client::Client::Enroll(log.transport(), "loopback", {2 * kParallel + 16});
  {
    client::Client cl(log.transport(), vault);
    cl.Fido2Register("rp");
  }
  const auto pk = vault.fido2[0].pk;

  // Each thread drives its own client over a vault copy pinned to index i.
  auto storm = [&](size_t first, std::vector<std::optional<crypto::Signature>>& out,
                   std::vector<Bytes32>& chals) {
    std::vector<std::thread> threads;
    out.assign(kParallel, std::nullopt);
    chals.resize(kParallel);
    for (size_t i = 0; i < kParallel; ++i) {
      threads.emplace_back([&, i] {
        client::VaultData mine = vault;
        mine.next_index = first + i;
        client::Client cl(log.transport(), mine);
        chals[i] = crypto::RandomArray<32>();
        try {
          out[i] = cl.Fido2Auth("rp", chals[i]);
        } catch (const client::ClientError&) {
        }
      });
    }
    for (auto& t : threads) t.join();
  };

  std::vector<std::optional<crypto::Signature>> sigs;
  std::vector<Bytes32> chals;
  storm(0, sigs, chals);
  size_t valid = 0;
  for (size_t i = 0; i < kParallel; ++i) {
    if (sigs[i] && crypto::EcdsaVerify(pk, fido2::SignedMessage("rp", chals[i]), *sigs[i])) {
      ++valid;
    }
  }
  auto summary = log.service().Accounts().front();
  o.Check(valid == kParallel, "parallel auth failed");
  o.Check(summary.records == kParallel, "record count");
  o.Check(summary.consumed_presignatures == kParallel, "distinct consumed indices");
  const size_t first_consumed = summary.consumed_presignatures;

  // Kill after append on every other request, then reload from disk.
  std::atomic<size_t> calls{0};
  log.service().set_fault_hook([&](std::string_view point) {
    if (point == "after-append" && calls++ % 2 == 0) {
      throw log::FaultInjected("killed after append");
    }
  });
  storm(kParallel, sigs, chals);
  size_t released = 0;
  for (const auto& s : sigs) released += s.has_value();
  log.Restart();
  summary = log.service().Accounts().front();
  const size_t durable = summary.records - kParallel;
  // Every released signature has a durable record; the faulted ones have a
  // record but no signature.
  o.Check(released == kParallel / 2, "released count under fault");
  o.Check(durable == kParallel, "records lost under fault");

  HttpRequest req;
  req.path = "/audit";
  req.bearer = vault.token;
  req.body = "{}";
  const auto res = wire::ParseBody(log.transport().Send(req).body);
  std::set<Bytes> cts;
  for (const auto& j : res.at("records")) cts.insert(wire::RecordFromJson(j).ct);
  o.Check(cts.size() == 2 * kParallel, "duplicate records");

  // Storage failing before the append: nothing released, nothing written.
  log.service().set_fault_hook([](std::string_view point) {
    if (point == "before-append") throw log::FaultInjected("storage down");
  });
  client::VaultData mine = vault;
  mine.next_index = 2 * kParallel;
  client::Client cl(log.transport(), mine);
  bool leaked = false;
  try {
    cl.Fido2Auth("rp", crypto::RandomArray<32>());
    leaked = true;
  } catch (const client::ClientError&) {
  }
  o.Check(!leaked, "signature released without storage");
  o.Check(log.service().Accounts().front().records == 2 * kParallel, "record without storage");
  o.detail << " " << valid << "/" << kParallel << " parallel signatures, "
           << first_consumed << " distinct indices consumed; under fault "
           << released << " released, " << durable << " durable";
}

// ----------------------------------------------------------------- AC9 ----

void Ac9(Outcome& o) {
  testing::TestLog log;
  log::HttpServer server(log.service(), "127.0.0.1", 0);
  server.Start();
  client::HttpTransport transport("http://127.0.0.1:" + std::to_string(server.port()));
  auto vault = client::Client::Enroll(transport, "http://127.0.0.1", {4});
  client::Client cl(transport, vault);

  for (size_t i = 0; i < 128; ++i) cl.PwRegister("pw" + std::to_string(i));
  auto t0 = Clock::now();
  cl.PwAuth("pw77");
  const double pw_s = Seconds(t0);

  cl.Fido2Register("f");
  t0 = Clock::now();
  cl.Fido2Auth("f", crypto::RandomArray<32>());
  const double fido_s = Seconds(t0);

  for (size_t i = 0; i < 16; ++i) cl.TotpRegister("t" + std::to_string(i), crypto::RandomArray<20>());
  t0 = Clock::now();
  cl.TotpAuth("t5", log.now_step());
  const double totp_s = Seconds(t0);
  server.Stop();

  o.Check(pw_s < 2.0, "pw auth too slow");
  o.Check(fido_s < 5.0, "FIDO2 auth too slow");
  o.Check(totp_s < 120.0, "TOTP auth too slow");
  o.detail << std::fixed << std::setprecision(3) << " pw@128 " << pw_s << " s, fido2 " << fido_s
           << " s, totp@16 " << totp_s << " s";
}

}  // namespace
}  // namespace larch

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    void (*run)(larch::Outcome&);
  };
  const Criterion criteria[] = {
      {"AC1", "two-party ECDSA oracle equivalence", 10, larch::Ac1},
      {"AC2", "tamper detection at opening", 10, larch::Ac2},
      {"AC3", "FIDO2 proof completeness and soundness", 300, larch::Ac3},
      {"AC4", "garbled circuits and TOTP codes", 300, larch::Ac4},
      {"AC5", "password protocol", 120, larch::Ac5},
      {"AC6", "audit round trip and tamper flagging", 120, larch::Ac6},
      {"AC7", "record and presignature sizes", 0, larch::Ac7},
      {"AC8", "concurrency and durability", 60, larch::Ac8},
      {"AC9", "latency smoke", 0, larch::Ac9},
  };
  bool all = true;
  for (const auto& c : criteria) {
    larch::Outcome o;
    const auto start = larch::Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    const double secs = larch::Seconds(start);
    if (c.budget_s > 0) {
      o.Check(secs < c.budget_s, "over the " + std::to_string(static_cast<int>(c.budget_s)) +
                                     " s budget");
    }
    all = all && o.pass;
    std::printf("%s %s: %s;%s (%.1f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
