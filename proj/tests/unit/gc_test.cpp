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

#include <random>

#include "gtest/gtest.h"
#include "larch/circuit/builder.hpp"
#include "larch/circuit/totp_circuit.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/gc/garble.hpp"
#include "larch/gc/ot.hpp"
#include "larch/gc/session.hpp"
#include "testing/reference.hpp"

namespace larch::gc {
namespace {

using circuit::BooleanCircuit;
using circuit::CircuitBuilder;
using circuit::Wire;

std::mt19937_64& Rng() {
  static std::mt19937_64 rng(77);
  return rng;
}

Bytes32 SeedOf(uint8_t v) {
  Bytes32 s{};
  s.fill(v);
  return s;
}

std::vector<uint8_t> GcRun(const BooleanCircuit& c, const std::vector<uint8_t>& in,
                           const Bytes32& seed) {
  const Garbling g = Garble(c, seed);
  std::vector<Label> labels(in.size());
  for (size_t i = 0; i < in.size(); ++i) labels[i] = g.InputLabel(i, in[i]);
  const auto out = Evaluate(c, g.tables, labels);
  std::vector<uint8_t> bits;
  size_t off = 0;
  for (const DecodeMap& m : g.decode_maps) {
    std::vector<Label> part(out.begin() + static_cast<ptrdiff_t>(off),
                            out.begin() + static_cast<ptrdiff_t>(off + m.entries.size()));
    const auto b = Decode(m, part);
    bits.insert(bits.end(), b.begin(), b.end());
    off += m.entries.size();
  }
  return bits;
}

TEST(GarbleTest, XorOnlyCircuitHasNoTables) {
  CircuitBuilder b;
  const auto in = b.AddInput(4);
  b.AddOutput(std::vector<Wire>{b.Xor(in[0], in[1]), b.Not(b.Xor(in[2], in[3]))});
  const auto c = b.Build();
  EXPECT_TRUE(Garble(c, SeedOf(1)).tables.empty());
}

TEST(GarbleTest, AndTruthTable) {
  const auto c = circuit::ParseBristol("1 3\n2 1 1\n1 1\n2 1 0 1 2 AND\n");
  EXPECT_EQ(Garble(c, SeedOf(2)).tables.size(), 48u);
  for (uint8_t a = 0; a < 2; ++a) {
    for (uint8_t b = 0; b < 2; ++b) {
      EXPECT_EQ(GcRun(c, {a, b}, SeedOf(2)), std::vector<uint8_t>{static_cast<uint8_t>(a & b)});
    }
  }
}

TEST(GarbleTest, IdentityWire) {
  const auto c = circuit::ParseBristol("0 1\n1 1\n1 1\n");
  EXPECT_EQ(GcRun(c, {0}, SeedOf(3)), std::vector<uint8_t>{0});
  EXPECT_EQ(GcRun(c, {1}, SeedOf(3)), std::vector<uint8_t>{1});
}

TEST(GarbleTest, DeterministicInSeed) {
  const auto c = circuit::ParseBristol("2 4\n2 1 1\n1 1\n2 1 0 1 2 AND\n1 1 2 3 INV\n");
  const Garbling a = Garble(c, SeedOf(4)), b = Garble(c, SeedOf(4)), d = Garble(c, SeedOf(5));
  EXPECT_EQ(a.tables, b.tables);
  EXPECT_EQ(a.input_zero, b.input_zero);
  EXPECT_EQ(a.decode_maps, b.decode_maps);
  EXPECT_NE(a.tables, d.tables);
  EXPECT_EQ(PermuteBit(a.delta), 1);
}

BooleanCircuit RandomCircuit(size_t nin, size_t ngates) {
  CircuitBuilder b;
  std::vector<Wire> pool = b.AddInput(nin);
  for (size_t i = 0; i < ngates; ++i) {
    const Wire x = pool[Rng()() % pool.size()];
    const Wire y = pool[Rng()() % pool.size()];
    switch (Rng()() % 3) {
      case 0: pool.push_back(b.Xor(x, y)); break;
      case 1: pool.push_back(b.And(x, y)); break;
      default: pool.push_back(b.Not(x)); break;
    }
  }
  std::vector<Wire> o1, o2;
  for (int i = 0; i < 3; ++i) o1.push_back(pool[pool.size() - 1 - i]);
  for (int i = 0; i < 2; ++i) o2.push_back(pool[Rng()() % pool.size()]);
  b.AddOutput(o1);
  b.AddOutput(o2);
  return b.Build();
}

TEST(GarbleTest, ExhaustivePlaintextEquivalence) {
  for (size_t nin = 1; nin <= 10; ++nin) {
    const auto c = RandomCircuit(nin, 60);
    const Garbling g = Garble(c, SeedOf(static_cast<uint8_t>(nin)));
    for (uint32_t v = 0; v < (1u << nin); ++v) {
      std::vector<uint8_t> in(nin);
      for (size_t i = 0; i < nin; ++i) in[i] = (v >> i) & 1;
      std::vector<Label> labels(nin);
      for (size_t i = 0; i < nin; ++i) labels[i] = g.InputLabel(i, in[i]);
      const auto out = Evaluate(c, g.tables, labels);
      std::vector<Label> p0(out.begin(), out.begin() + 3), p1(out.begin() + 3, out.end());
      auto bits = Decode(g.decode_maps[0], p0);
      const auto b1 = Decode(g.decode_maps[1], p1);
      bits.insert(bits.end(), b1.begin(), b1.end());
      ASSERT_EQ(bits, circuit::EvalPlaintext(c, in)) << nin << " " << v;
    }
  }
}

TEST(GarbleTest, DecodeRejectsForeignOrCorruptLabels) {
  const auto c = RandomCircuit(4, 30);
  const Garbling g = Garble(c, SeedOf(9));
  std::vector<Label> labels;
  for (size_t i = 0; i < 4; ++i) labels.push_back(g.InputLabel(i, i & 1));
  const auto out = Evaluate(c, g.tables, labels);
  std::vector<Label> block1(out.begin() + 3, out.end());
  // Decoding the second block with the first block's map fails lookup.
  DecodeMap wrong = g.decode_maps[0];
  wrong.entries.resize(2);
  EXPECT_THROW(Decode(wrong, block1), GcError);
  block1[0][3] ^= 0x40;
  EXPECT_THROW(Decode(g.decode_maps[1], block1), GcError);
  EXPECT_THROW(Evaluate(c, g.tables, std::vector<Label>(3)), GcError);
  EXPECT_EQ(DecodeMap::Deserialize(g.decode_maps[1].Serialize()), g.decode_maps[1]);
}

// --- OT -------------------------------------------------------------------

std::vector<std::array<Label, 2>> RandomPairs(size_t n) {
  std::vector<std::array<Label, 2>> pairs(n);
  for (auto& p : pairs) {
    p[0] = crypto::RandomArray<16>();
    p[1] = crypto::RandomArray<16>();
  }
  return pairs;
}

std::vector<Label> RunOt(const std::vector<std::array<Label, 2>>& pairs,
                         const std::vector<uint8_t>& choices) {
  OtSender s(pairs.size(), crypto::RandomArray<32>());
  OtReceiver r(choices, crypto::RandomArray<32>());
  const Bytes r2 = r.Round2(s.Round1());
  return r.Finish(s.Round3(r2, pairs));
}

TEST(OtTest, AllZeroChoicesYieldFirstMessages) {
  const auto pairs = RandomPairs(16);
  const auto got = RunOt(pairs, std::vector<uint8_t>(16, 0));
  for (size_t i = 0; i < 16; ++i) EXPECT_EQ(got[i], pairs[i][0]);
}

TEST(OtTest, RandomChoicesMatchDirectSelection) {
  const auto pairs = RandomPairs(256);
  std::vector<uint8_t> choices(256);
  for (auto& c : choices) c = Rng()() & 1;
  const auto got = RunOt(pairs, choices);
  for (size_t i = 0; i < 256; ++i) {
    EXPECT_EQ(got[i], pairs[i][choices[i]]);
    EXPECT_NE(got[i], pairs[i][choices[i] ^ 1]);
  }
}

TEST(OtTest, TamperedPointsAbort) {
  OtSender s(4, SeedOf(1));
  OtReceiver r({0, 1, 0, 1}, SeedOf(2));
  Bytes r1 = s.Round1();
  Bytes bad = r1;
  bad[0] = 0x07;
  EXPECT_THROW(r.Round2(bad), GcError);
  EXPECT_THROW(r.Round2(Bytes(33, 0)), GcError);  // identity
  EXPECT_THROW(r.Round2(Bytes(5, 2)), GcError);
  Bytes r2 = r.Round2(r1);
  Bytes bad2 = r2;
  bad2[33] ^= 0xff;
  EXPECT_THROW(s.Round3(bad2, RandomPairs(4)), GcError);
  EXPECT_THROW(s.Round3(Bytes(r2.begin(), r2.end() - 1), RandomPairs(4)), GcError);
  EXPECT_THROW(r.Finish(Bytes(10)), GcError);
}

// --- Sessions -------------------------------------------------------------

struct Transcript {
  std::vector<Bytes> messages;
  std::vector<uint8_t> garbler_out;
  std::vector<uint8_t> evaluator_out;
};

Transcript RunSession(const BooleanCircuit& c, const std::vector<uint8_t>& eval_bits,
                      const std::vector<uint8_t>& garb_bits, const Bytes32& gseed,
                      const Bytes32& eseed) {
  Bytes16 sid{};
  sid[0] = 0x42;
  GarblerSession g(c, garb_bits, sid, gseed);
  EvaluatorSession e(c, eval_bits, sid, eseed);
  Transcript t;
  auto wire = [&](const SessionMessage& m) {
    t.messages.push_back(m.Encode());
    return SessionMessage::Decode(t.messages.back());
  };
  const auto m1 = wire(g.Start());
  const auto m2 = wire(e.OnOtRound1(m1));
  const auto m34 = g.OnOtRound2(m2);
  e.OnOtRound3(wire(m34[0]));
  const auto m5 = wire(e.OnGarbleBlob(wire(m34[1])));
  t.garbler_out = g.OnLabelsBack(m5);
  t.evaluator_out = e.OnOutputMap(wire(g.Finish()));
  return t;
}

TEST(SessionTest, MessageFramingRoundTrip) {
  SessionMessage m{MsgType::kGarbleBlob, crypto::RandomArray<16>(), 3, ToBytes("payload")};
  const Bytes enc = m.Encode();
  EXPECT_EQ(enc.size(), 1u + 16 + 4 + 4 + 7);
  EXPECT_EQ(SessionMessage::Decode(enc), m);
  Bytes bad = enc;
  bad[0] = 0;
  EXPECT_THROW(SessionMessage::Decode(bad), GcError);
  EXPECT_THROW(SessionMessage::Decode(Bytes(enc.begin(), enc.end() - 1)), GcError);
}

TEST(SessionTest, SmallCircuitSessionsMatchPlaintext) {
  const auto c = RandomCircuit(6, 50);
  // Split the 6 inputs as (evaluator 4, garbler 2).
  BooleanCircuit split = c;
  split.input_sizes = {4, 2};
  for (uint32_t v = 0; v < 64; v += 5) {
    std::vector<uint8_t> in(6);
    for (size_t i = 0; i < 6; ++i) in[i] = (v >> i) & 1;
    const auto t = RunSession(split, {in.begin(), in.begin() + 4}, {in.begin() + 4, in.end()},
                              crypto::RandomArray<32>(), crypto::RandomArray<32>());
    auto all = t.evaluator_out;
    all.insert(all.end(), t.garbler_out.begin(), t.garbler_out.end());
    EXPECT_EQ(all, circuit::EvalPlaintext(split, in));
  }
}

TEST(SessionTest, OutOfOrderOrForeignMessagesAbort) {
  const auto c = RandomCircuit(4, 20);
  BooleanCircuit split = c;
  split.input_sizes = {2, 2};
  Bytes16 sid{};
  GarblerSession g(split, {0, 1}, sid, SeedOf(1));
  EvaluatorSession e(split, {1, 1}, sid, SeedOf(2));
  auto m1 = g.Start();
  EXPECT_THROW(g.Finish(), GcError);
  auto foreign = m1;
  foreign.session_id[0] ^= 1;
  EXPECT_THROW(e.OnOtRound1(foreign), GcError);
  auto m2 = e.OnOtRound1(m1);
  auto wrong_seq = m2;
  wrong_seq.seq = 7;
  EXPECT_THROW(g.OnOtRound2(wrong_seq), GcError);
  auto m34 = g.OnOtRound2(m2);
  EXPECT_THROW(e.OnGarbleBlob(m34[1]), GcError);  // OT round 3 first
  e.OnOtRound3(m34[0]);
  auto back = e.OnGarbleBlob(m34[1]);
  back.payload[0] ^= 1;
  EXPECT_THROW(g.OnLabelsBack(back), GcError);
}

class TotpSessionTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    params_.totp_slots = 4;
    c_ = new BooleanCircuit(circuit::BuildTotpCircuit(params_));
  }
  static void TearDownTestSuite() { delete c_; }
  static circuit::CircuitParams params_;
  static BooleanCircuit* c_;
};
circuit::CircuitParams TotpSessionTest::params_;
BooleanCircuit* TotpSessionTest::c_ = nullptr;

TEST_F(TotpSessionTest, SessionYieldsReferenceCodeAndIsReproducible) {
  circuit::TotpClientInput ci;
  circuit::TotpLogInput li;
  ci.k = crypto::RandomArray<32>();
  ci.r = crypto::RandomArray<32>();
  ci.kclient = crypto::RandomArray<32>();
  ci.nonce = crypto::RandomArray<12>();
  testing::RefBytes kr(ci.k.begin(), ci.k.end());
  kr.insert(kr.end(), ci.r.begin(), ci.r.end());
  const auto cm = testing::RefSha256(kr);
  std::copy(cm.begin(), cm.end(), li.cm.begin());
  for (size_t j = 0; j < 4; ++j) {
    li.ids.push_back(crypto::RandomArray<16>());
    li.klogs.push_back(crypto::RandomArray<32>());
  }
  ci.id = li.ids[3];
  li.t = 55555555;
  testing::RefBytes key(32);
  for (size_t i = 0; i < 32; ++i) key[i] = ci.kclient[i] ^ li.klogs[3][i];

  const auto t1 = RunSession(*c_, circuit::TotpClientBits(ci), circuit::TotpLogBits(li, params_),
                             SeedOf(7), SeedOf(8));
  EXPECT_EQ(circuit::DecodeTotpCode(t1.evaluator_out), testing::RefTotpTruncated(key, li.t));
  const auto log_out = circuit::DecodeTotpLogOutput(t1.garbler_out);
  EXPECT_TRUE(log_out.valid);
  const auto body = testing::RefChaCha20Xor(testing::RefBytes(ci.k.begin(), ci.k.end()),
                                            testing::RefBytes(ci.nonce.begin(), ci.nonce.end()),
                                            0, testing::RefBytes(ci.id.begin(), ci.id.end()));
  EXPECT_TRUE(std::equal(body.begin(), body.end(), log_out.ct.begin() + 12));

  const auto t2 = RunSession(*c_, circuit::TotpClientBits(ci), circuit::TotpLogBits(li, params_),
                             SeedOf(7), SeedOf(8));
  EXPECT_EQ(t1.messages, t2.messages);
}

}  // namespace
}  // namespace larch::gc
