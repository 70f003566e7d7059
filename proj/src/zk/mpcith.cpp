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

#include "larch/zk/mpcith.hpp"

#include <cmath>

#include "larch/crypto/hash.hpp"
#include "larch/crypto/prg.hpp"

namespace larch::zk {

namespace {

using circuit::BooleanCircuit;
using circuit::Gate;
using circuit::GateOp;

constexpr uint64_t kTapeDomain = 0x7a6b7461706500ull;
constexpr std::string_view kCommitTag = "larch-zk-commit-v1";
constexpr std::string_view kChallengeTag = "larch-zk-challenge-v1";

size_t PackedLen(size_t bits) { return (bits + 7) / 8; }

struct Shape {
  size_t nwit = 0;
  size_t npub = 0;
  size_t nand = 0;
  size_t words = 0;  // 64-bit words per bitsliced value
  size_t wit_bytes = 0;
  size_t and_bytes = 0;
};

Shape ShapeOf(const BooleanCircuit& c, size_t npub_given, size_t reps) {
  if (c.input_sizes.empty() || c.input_sizes.size() > 2) {
    throw std::invalid_argument("zk circuit needs a witness block and at most one public block");
  }
  if (c.num_outputs() != 1) throw std::invalid_argument("zk circuit must have one output bit");
  Shape s;
  s.nwit = c.input_sizes[0];
  s.npub = c.input_sizes.size() == 2 ? c.input_sizes[1] : 0;
  if (npub_given != s.npub) throw std::invalid_argument("public input length mismatch");
  s.nand = c.and_count();
  s.words = (reps + 63) / 64;
  s.wit_bytes = PackedLen(s.nwit);
  s.and_bytes = PackedLen(s.nand);
  return s;
}

Bytes Tape(const Bytes16& seed, const Shape& s) {
  crypto::StreamPrg prg(seed, kTapeDomain);
  return prg.Next(s.wit_bytes + s.and_bytes);
}

inline uint8_t GetBit(const uint8_t* packed, size_t i) {
  return (packed[i / 8] >> (7 - i % 8)) & 1;
}

// out[b * words + j / 64] bit (j % 64) = bit b of rows[j].
void Transpose(const std::vector<const uint8_t*>& rows, size_t nbits, size_t words,
               uint64_t* out) {
  std::fill(out, out + nbits * words, 0);
  for (size_t j = 0; j < rows.size(); ++j) {
    const uint8_t* row = rows[j];
    const size_t w = j / 64;
    const uint64_t bit = uint64_t{1} << (j % 64);
    for (size_t b = 0; b < nbits; ++b) {
      if (GetBit(row, b)) out[b * words + w] |= bit;
    }
  }
}

Bytes Extract(const uint64_t* sliced, size_t nbits, size_t words, size_t rep) {
  Bytes out(PackedLen(nbits), 0);
  const size_t w = rep / 64;
  const int shift = static_cast<int>(rep % 64);
  for (size_t b = 0; b < nbits; ++b) {
    if ((sliced[b * words + w] >> shift) & 1) out[b / 8] |= static_cast<uint8_t>(0x80 >> (b % 8));
  }
  return out;
}

inline uint8_t RepBit(const uint64_t* v, size_t rep) { return (v[rep / 64] >> (rep % 64)) & 1; }

Bytes32 CommitView(const Bytes16& seed, const Bytes* x2, ByteSpan view) {
  crypto::Sha256Hasher h;
  h.Update(kCommitTag).Update(seed);
  if (x2) h.Update(*x2);
  h.Update(view);
  return h.Final();
}

// Bitsliced evaluation of two or three party slots. Each slot carries an
// INV mask selecting the repetitions where it plays party 0. AND outputs of
// a slot are either computed from the replicated formula (needs slot+1) or
// read from a supplied view.
struct SlotState {
  std::vector<uint64_t> wires;
  std::vector<uint64_t> rand;  // nand x words
  std::vector<uint64_t> view;  // nand x words
  std::vector<uint64_t> party0_mask;
};

void InitSlot(SlotState& s, const BooleanCircuit& c, const Shape& sh) {
  s.wires.assign(static_cast<size_t>(c.wire_count) * sh.words, 0);
  s.rand.assign(sh.nand * sh.words, 0);
  s.view.assign(sh.nand * sh.words, 0);
  s.party0_mask.assign(sh.words, 0);
}

void LoadInputs(SlotState& s, const std::vector<const uint8_t*>& wit_rows,
                const std::vector<const uint8_t*>& rand_rows,
                const std::vector<uint8_t>& publics, const Shape& sh) {
  Transpose(wit_rows, sh.nwit, sh.words, s.wires.data());
  Transpose(rand_rows, sh.nand, sh.words, s.rand.data());
  for (size_t i = 0; i < sh.npub; ++i) {
    uint64_t* dst = &s.wires[(sh.nwit + i) * sh.words];
    for (size_t k = 0; k < sh.words; ++k) dst[k] = publics[i] ? s.party0_mask[k] : 0;
  }
}

// computed[i] selects whether slot i computes its AND outputs (true) or
// takes them from its view (false). Computed slots need slot (i+1) % n.
void Evaluate(const BooleanCircuit& c, const Shape& sh, std::vector<SlotState*>& slots,
              const std::vector<bool>& computed) {
  const size_t n = slots.size();
  const size_t W = sh.words;
  size_t and_idx = 0;
  for (const Gate& g : c.gates) {
    switch (g.op) {
      case GateOp::kXor:
        for (SlotState* s : slots) {
          uint64_t* o = &s->wires[g.out * W];
          const uint64_t* a = &s->wires[g.in0 * W];
          const uint64_t* b = &s->wires[g.in1 * W];
          for (size_t k = 0; k < W; ++k) o[k] = a[k] ^ b[k];
        }
        break;
      case GateOp::kInv:
        for (SlotState* s : slots) {
          uint64_t* o = &s->wires[g.out * W];
          const uint64_t* a = &s->wires[g.in0 * W];
          for (size_t k = 0; k < W; ++k) o[k] = a[k] ^ s->party0_mask[k];
        }
        break;
      case GateOp::kAnd:
        for (size_t i = 0; i < n; ++i) {
          SlotState* s = slots[i];
          uint64_t* v = &s->view[and_idx * W];
          if (!computed[i]) continue;
          const SlotState* t = slots[(i + 1) % n];
          const uint64_t* a0 = &s->wires[g.in0 * W];
          const uint64_t* b0 = &s->wires[g.in1 * W];
          const uint64_t* a1 = &t->wires[g.in0 * W];
          const uint64_t* b1 = &t->wires[g.in1 * W];
          const uint64_t* r0 = &s->rand[and_idx * W];
          const uint64_t* r1 = &t->rand[and_idx * W];
          for (size_t k = 0; k < W; ++k) {
            v[k] = (a0[k] & b0[k]) ^ (a1[k] & b0[k]) ^ (a0[k] & b1[k]) ^ r0[k] ^ r1[k];
          }
        }
        // Outputs are written after all views so the replicated formula
        // reads only gate inputs.
        for (SlotState* s : slots) {
          uint64_t* o = &s->wires[g.out * W];
          const uint64_t* v = &s->view[and_idx * W];
          for (size_t k = 0; k < W; ++k) o[k] = v[k];
        }
        ++and_idx;
        break;
    }
  }
}

void AppendTranscript(Bytes& t, const std::array<uint8_t, 3>& y,
                      const std::array<Bytes32, 3>& cm) {
  t.insert(t.end(), y.begin(), y.end());
  for (const auto& c : cm) t.insert(t.end(), c.begin(), c.end());
}

}  // namespace

ZkParams ZkParams::FromProfile(std::string_view name) {
  if (name == "test") return Test();
  if (name == "prod") return Prod();
  throw std::invalid_argument("unknown proof profile '" + std::string(name) + "'");
}

double ZkParams::SoundnessBits() const {
  return static_cast<double>(reps) * std::log2(1.5);
}

Bytes DeriveInputShare(const Bytes16& seed, size_t witness_bits) {
  crypto::StreamPrg prg(seed, kTapeDomain);
  Bytes out = prg.Next(PackedLen(witness_bits));
  if (witness_bits % 8) out.back() &= static_cast<uint8_t>(0xff << (8 - witness_bits % 8));
  return out;
}

std::vector<uint8_t> ChallengeTrits(const Bytes32& digest, size_t reps) {
  std::vector<uint8_t> trits;
  trits.reserve(reps);
  for (uint64_t block = 0; trits.size() < reps; ++block) {
    crypto::Sha256Hasher h;
    const Bytes32 chunk = h.Update(digest).UpdateU64(block).Final();
    for (uint8_t byte : chunk) {
      for (int shift = 6; shift >= 0 && trits.size() < reps; shift -= 2) {
        const uint8_t v = (byte >> shift) & 3;
        if (v < 3) trits.push_back(v);
      }
    }
  }
  return trits;
}

Bytes32 ChallengeDigest(const BooleanCircuit& c, const std::vector<uint8_t>& publics,
                        ByteSpan transcript, ByteSpan context) {
  crypto::Sha256Hasher h;
  h.Update(kChallengeTag);
  h.UpdateU64(context.size()).Update(context);
  h.UpdateU64(c.wire_count).UpdateU64(c.gates.size());
  for (uint32_t s : c.input_sizes) h.UpdateU64(s);
  h.UpdateU64(publics.size()).Update(circuit::BitsToBytes(publics));
  h.UpdateU64(transcript.size()).Update(transcript);
  return h.Final();
}

MpcProof Prove(const BooleanCircuit& c, const std::vector<uint8_t>& witness,
               const std::vector<uint8_t>& publics, const ZkParams& params,
               ByteSpan context) {
  if (params.reps == 0) throw std::invalid_argument("reps must be at least 1");
  const Shape sh = ShapeOf(c, publics.size(), params.reps);
  if (witness.size() != sh.nwit) throw std::invalid_argument("witness length mismatch");
  std::vector<uint8_t> inputs = witness;
  inputs.insert(inputs.end(), publics.begin(), publics.end());
  if (circuit::EvalPlaintext(c, inputs)[0] != 1) {
    throw ZkError("witness does not satisfy the circuit; refusing to prove");
  }

  const size_t R = params.reps;
  const size_t W = sh.words;
  std::vector<std::array<Bytes16, 3>> seeds(R);
  std::vector<std::array<Bytes, 3>> tapes(R);
  std::vector<Bytes> x2(R);
  const Bytes xw = circuit::BitsToBytes(witness);
  for (size_t j = 0; j < R; ++j) {
    for (size_t p = 0; p < 3; ++p) {
      seeds[j][p] = crypto::RandomArray<16>();
      tapes[j][p] = Tape(seeds[j][p], sh);
    }
    x2[j] = DeriveInputShare(seeds[j][0], sh.nwit);
    const Bytes x1 = DeriveInputShare(seeds[j][1], sh.nwit);
    for (size_t i = 0; i < sh.wit_bytes; ++i) x2[j][i] ^= x1[i] ^ xw[i];
  }

  std::array<SlotState, 3> state;
  for (size_t p = 0; p < 3; ++p) {
    InitSlot(state[p], c, sh);
    std::vector<const uint8_t*> wit_rows(R), rand_rows(R);
    for (size_t j = 0; j < R; ++j) {
      wit_rows[j] = p == 2 ? x2[j].data() : tapes[j][p].data();
      rand_rows[j] = tapes[j][p].data() + sh.wit_bytes;
    }
    if (p == 0) std::fill(state[p].party0_mask.begin(), state[p].party0_mask.end(), ~uint64_t{0});
    LoadInputs(state[p], wit_rows, rand_rows, publics, sh);
  }
  std::vector<SlotState*> slots = {&state[0], &state[1], &state[2]};
  Evaluate(c, sh, slots, {true, true, true});

  const size_t out_wire = c.wire_count - 1;
  Bytes transcript;
  std::vector<std::array<Bytes32, 3>> commits(R);
  std::vector<std::array<Bytes, 3>> views(R);
  for (size_t j = 0; j < R; ++j) {
    std::array<uint8_t, 3> y{};
    for (size_t p = 0; p < 3; ++p) {
      views[j][p] = Extract(state[p].view.data(), sh.nand, W, j);
      commits[j][p] = CommitView(seeds[j][p], p == 2 ? &x2[j] : nullptr, views[j][p]);
      y[p] = RepBit(&state[p].wires[out_wire * W], j);
    }
    AppendTranscript(transcript, y, commits[j]);
  }
  const auto trits = ChallengeTrits(ChallengeDigest(c, publics, transcript, context), R);

  MpcProof proof;
  proof.reps.resize(R);
  for (size_t j = 0; j < R; ++j) {
    const uint8_t e = trits[j];
    const size_t e1 = (e + 1) % 3, e2 = (e + 2) % 3;
    RepetitionProof& rp = proof.reps[j];
    rp.e = e;
    rp.unopened_commitment = commits[j][e2];
    rp.seed_e = seeds[j][e];
    rp.seed_next = seeds[j][e1];
    if (e2 != 2) rp.x2 = x2[j];
    rp.view = std::move(views[j][e1]);
  }
  return proof;
}

bool Verify(const BooleanCircuit& c, const std::vector<uint8_t>& publics, const MpcProof& proof,
            ByteSpan context) {
  try {
    const size_t R = proof.reps.size();
    if (R == 0) return false;
    const Shape sh = ShapeOf(c, publics.size(), R);
    const size_t W = sh.words;
    for (const RepetitionProof& rp : proof.reps) {
      if (rp.e > 2 || rp.view.size() != sh.and_bytes) return false;
      const bool opens_two = rp.e != 0;  // parties {1,2} or {2,0}
      if (opens_two != (rp.x2.size() == sh.wit_bytes) || (!opens_two && !rp.x2.empty())) {
        return false;
      }
    }

    // Slot A plays party e, slot B plays party e+1.
    std::vector<Bytes> tape_a(R), tape_b(R);
    std::vector<const uint8_t*> wit_a(R), wit_b(R), rand_a(R), rand_b(R), view_b(R);
    SlotState a, b;
    InitSlot(a, c, sh);
    InitSlot(b, c, sh);
    for (size_t j = 0; j < R; ++j) {
      const RepetitionProof& rp = proof.reps[j];
      tape_a[j] = Tape(rp.seed_e, sh);
      tape_b[j] = Tape(rp.seed_next, sh);
      wit_a[j] = rp.e == 2 ? rp.x2.data() : tape_a[j].data();
      wit_b[j] = rp.e == 1 ? rp.x2.data() : tape_b[j].data();
      rand_a[j] = tape_a[j].data() + sh.wit_bytes;
      rand_b[j] = tape_b[j].data() + sh.wit_bytes;
      view_b[j] = rp.view.data();
      const uint64_t bit = uint64_t{1} << (j % 64);
      if (rp.e == 0) a.party0_mask[j / 64] |= bit;
      if (rp.e == 2) b.party0_mask[j / 64] |= bit;
    }
    LoadInputs(a, wit_a, rand_a, publics, sh);
    LoadInputs(b, wit_b, rand_b, publics, sh);
    Transpose(view_b, sh.nand, W, b.view.data());
    std::vector<SlotState*> slots = {&a, &b};
    Evaluate(c, sh, slots, {true, false});

    const size_t out_wire = c.wire_count - 1;
    Bytes transcript;
    for (size_t j = 0; j < R; ++j) {
      const RepetitionProof& rp = proof.reps[j];
      const size_t e = rp.e, e1 = (e + 1) % 3, e2 = (e + 2) % 3;
      std::array<uint8_t, 3> y{};
      std::array<Bytes32, 3> cm{};
      y[e] = RepBit(&a.wires[out_wire * W], j);
      y[e1] = RepBit(&b.wires[out_wire * W], j);
      y[e2] = 1 ^ y[e] ^ y[e1];
      const Bytes view_a = Extract(a.view.data(), sh.nand, W, j);
      cm[e] = CommitView(rp.seed_e, e == 2 ? &rp.x2 : nullptr, view_a);
      cm[e1] = CommitView(rp.seed_next, e1 == 2 ? &rp.x2 : nullptr, rp.view);
      cm[e2] = rp.unopened_commitment;
      AppendTranscript(transcript, y, cm);
    }
    const auto trits = ChallengeTrits(ChallengeDigest(c, publics, transcript, context), R);
    for (size_t j = 0; j < R; ++j) {
      if (trits[j] != proof.reps[j].e) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

bool Verify(const BooleanCircuit& c, const std::vector<uint8_t>& publics, ByteSpan proof_bytes,
            ByteSpan context) {
  try {
    return Verify(c, publics, MpcProof::Deserialize(proof_bytes), context);
  } catch (const std::exception&) {
    return false;
  }
}

Bytes MpcProof::Serialize() const {
  ByteWriter w;
  w.U8(kVersion);
  w.U32(static_cast<uint32_t>(reps.size()));
  for (const RepetitionProof& rp : reps) {
    ByteWriter block;
    block.U8(rp.e);
    block.Raw(rp.unopened_commitment);
    block.Raw(rp.seed_e);
    block.Raw(rp.seed_next);
    block.Sized(rp.x2);
    block.Sized(rp.view);
    w.Sized(block.bytes());
  }
  return w.Take();
}

MpcProof MpcProof::Deserialize(ByteSpan data) {
  ByteReader r(data);
  if (r.U8() != kVersion) throw std::invalid_argument("unsupported proof version");
  const uint32_t n = r.U32();
  if (n == 0 || n > 4096) throw std::invalid_argument("bad repetition count");
  MpcProof p;
  p.reps.resize(n);
  for (RepetitionProof& rp : p.reps) {
    ByteReader block(r.Sized());
    rp.e = block.U8();
    rp.unopened_commitment = block.Fixed<32>();
    rp.seed_e = block.Fixed<16>();
    rp.seed_next = block.Fixed<16>();
    const ByteSpan x2 = block.Sized();
    rp.x2.assign(x2.begin(), x2.end());
    const ByteSpan view = block.Sized();
    rp.view.assign(view.begin(), view.end());
    block.ExpectDone();
  }
  r.ExpectDone();
  return p;
}

}  // namespace larch::zk
