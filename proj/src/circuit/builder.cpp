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

#include "larch/circuit/builder.hpp"

#include <stdexcept>
#include <unordered_set>

namespace larch::circuit {

std::vector<Wire> CircuitBuilder::AddInput(size_t bits) {
  if (!gates_.empty()) throw std::logic_error("inputs must precede gates");
  std::vector<Wire> wires(bits);
  for (size_t i = 0; i < bits; ++i) wires[i] = next_wire_++;
  input_sizes_.push_back(static_cast<uint32_t>(bits));
  inv_source_.resize(next_wire_, kZero);
  return wires;
}

void CircuitBuilder::AddOutput(std::span<const Wire> wires) {
  outputs_.emplace_back(wires.begin(), wires.end());
}

Wire CircuitBuilder::Emit(GateOp op, Wire a, Wire b) {
  const Wire out = next_wire_++;
  gates_.push_back(Gate{op, a, op == GateOp::kInv ? 0 : b, out});
  inv_source_.push_back(op == GateOp::kInv ? a : kZero);
  if (op == GateOp::kAnd) ++and_count_;
  return out;
}

Wire CircuitBuilder::Not(Wire a) {
  if (a == kZero) return kOne;
  if (a == kOne) return kZero;
  if (inv_source_[a] != kZero) return inv_source_[a];
  return Emit(GateOp::kInv, a, 0);
}

Wire CircuitBuilder::Xor(Wire a, Wire b) {
  if (a == kZero) return b;
  if (b == kZero) return a;
  if (a == kOne) return Not(b);
  if (b == kOne) return Not(a);
  if (a == b) return kZero;
  if (inv_source_[a] == b || inv_source_[b] == a) return kOne;
  return Emit(GateOp::kXor, a, b);
}

Wire CircuitBuilder::And(Wire a, Wire b) {
  if (a == kZero || b == kZero) return kZero;
  if (a == kOne) return b;
  if (b == kOne) return a;
  if (a == b) return a;
  if (inv_source_[a] == b || inv_source_[b] == a) return kZero;
  return Emit(GateOp::kAnd, a, b);
}

Wire CircuitBuilder::Or(Wire a, Wire b) { return Xor(Xor(a, b), And(a, b)); }

Wire CircuitBuilder::Mux(Wire s, Wire a, Wire b) { return Xor(a, And(s, Xor(a, b))); }

BooleanCircuit CircuitBuilder::Build() const {
  uint32_t nin = 0;
  for (uint32_t s : input_sizes_) nin += s;
  if (nin == 0) throw std::logic_error("circuit needs at least one input");

  std::vector<Gate> gates = gates_;
  uint32_t next = next_wire_;
  auto emit = [&](GateOp op, Wire a, Wire b) {
    gates.push_back(Gate{op, a, b, next});
    return next++;
  };
  // Materialize constants lazily from input wire 0.
  Wire zero = kZero, one = kZero;
  auto const_wire = [&](Wire c) {
    if (zero == kZero) zero = emit(GateOp::kXor, 0, 0);
    if (c == kZero) return zero;
    if (one == kZero) one = emit(GateOp::kInv, zero, 0);
    return one;
  };

  std::vector<Wire> final_outputs;
  std::unordered_set<Wire> claimed;
  for (const auto& block : outputs_) {
    for (Wire w : block) {
      if (IsConst(w)) w = const_wire(w);
      if (w < nin || claimed.count(w)) {
        w = emit(GateOp::kInv, emit(GateOp::kInv, w, 0), 0);
      }
      claimed.insert(w);
      final_outputs.push_back(w);
    }
  }
  // The constants themselves may have been claimed as outputs; copies made
  // afterwards are fine because claimed ids stay unique.

  const uint32_t total = next;
  const uint32_t nout = static_cast<uint32_t>(final_outputs.size());
  std::vector<uint32_t> remap(total, UINT32_MAX);
  for (uint32_t i = 0; i < nin; ++i) remap[i] = i;
  for (uint32_t i = 0; i < nout; ++i) remap[final_outputs[i]] = total - nout + i;
  uint32_t cursor = nin;
  for (const Gate& g : gates) {
    if (remap[g.out] == UINT32_MAX) remap[g.out] = cursor++;
  }

  BooleanCircuit c;
  c.wire_count = total;
  c.input_sizes = input_sizes_;
  for (const auto& block : outputs_) c.output_sizes.push_back(static_cast<uint32_t>(block.size()));
  c.gates.reserve(gates.size());
  for (const Gate& g : gates) {
    Gate r = g;
    r.in0 = remap[g.in0];
    r.in1 = g.op == GateOp::kInv ? 0 : remap[g.in1];
    r.out = remap[g.out];
    c.gates.push_back(r);
  }
  return c;
}

Word ConstWord(uint64_t value, size_t width) {
  Word w(width);
  for (size_t i = 0; i < width; ++i) w[i] = ((value >> i) & 1) ? kOne : kZero;
  return w;
}

Word XorWord(CircuitBuilder& b, const Word& x, const Word& y) {
  Word out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = b.Xor(x[i], y[i]);
  return out;
}

Word AndWord(CircuitBuilder& b, const Word& x, const Word& y) {
  Word out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = b.And(x[i], y[i]);
  return out;
}

// Ripple-carry adder with one AND per bit: c' = c ^ ((x ^ c) & (y ^ c)).
Word AddWord(CircuitBuilder& b, const Word& x, const Word& y) {
  Word out(x.size());
  Wire carry = kZero;
  for (size_t i = 0; i < x.size(); ++i) {
    const Wire xc = b.Xor(x[i], carry);
    out[i] = b.Xor(xc, y[i]);
    if (i + 1 < x.size()) carry = b.Xor(carry, b.And(xc, b.Xor(y[i], carry)));
  }
  return out;
}

Word RotrWord(const Word& x, size_t n) {
  Word out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[(i + n) % x.size()];
  return out;
}

Word RotlWord(const Word& x, size_t n) { return RotrWord(x, x.size() - n % x.size()); }

Word ShrWord(const Word& x, size_t n) {
  Word out(x.size(), kZero);
  for (size_t i = 0; i + n < x.size(); ++i) out[i] = x[i + n];
  return out;
}

Word MuxWord(CircuitBuilder& b, Wire s, const Word& x, const Word& y) {
  Word out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = b.Mux(s, x[i], y[i]);
  return out;
}

std::vector<Wire> ConstBits(ByteSpan bytes) {
  std::vector<Wire> out;
  out.reserve(bytes.size() * 8);
  for (uint8_t byte : bytes) {
    for (int j = 7; j >= 0; --j) out.push_back(((byte >> j) & 1) ? kOne : kZero);
  }
  return out;
}

std::vector<Wire> XorBits(CircuitBuilder& b, std::span<const Wire> x,
                          std::span<const Wire> y) {
  if (x.size() != y.size()) throw std::invalid_argument("XorBits: width mismatch");
  std::vector<Wire> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = b.Xor(x[i], y[i]);
  return out;
}

Wire AndAll(CircuitBuilder& b, std::span<const Wire> bits) {
  std::vector<Wire> level(bits.begin(), bits.end());
  if (level.empty()) return kOne;
  while (level.size() > 1) {
    std::vector<Wire> next;
    for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(b.And(level[i], level[i + 1]));
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level[0];
}

Wire OrAll(CircuitBuilder& b, std::span<const Wire> bits) {
  std::vector<Wire> inv(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) inv[i] = b.Not(bits[i]);
  return b.Not(AndAll(b, inv));
}

Wire EqualBits(CircuitBuilder& b, std::span<const Wire> x, std::span<const Wire> y) {
  if (x.size() != y.size()) throw std::invalid_argument("EqualBits: width mismatch");
  std::vector<Wire> same(x.size());
  for (size_t i = 0; i < x.size(); ++i) same[i] = b.Not(b.Xor(x[i], y[i]));
  return AndAll(b, same);
}

Word WordFromBitsBe(std::span<const Wire> bits) {
  return Word(bits.rbegin(), bits.rend());
}

std::vector<Wire> BitsFromWordBe(const Word& w) {
  return std::vector<Wire>(w.rbegin(), w.rend());
}

// Byte k of a little-endian word holds value bits 8k..8k+7; each byte's bits
// arrive MSB first.
Word WordFromBitsLe(std::span<const Wire> bits) {
  Word w(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) w[8 * (i / 8) + 7 - i % 8] = bits[i];
  return w;
}

std::vector<Wire> BitsFromWordLe(const Word& w) {
  std::vector<Wire> bits(w.size());
  for (size_t i = 0; i < w.size(); ++i) bits[i] = w[8 * (i / 8) + 7 - i % 8];
  return bits;
}

namespace {

constexpr uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

constexpr uint32_t kSha256Iv[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

Word Xor3(CircuitBuilder& b, const Word& x, const Word& y, const Word& z) {
  return XorWord(b, XorWord(b, x, y), z);
}

}  // namespace

std::vector<Word> Sha256InitialState() {
  std::vector<Word> s;
  for (uint32_t v : kSha256Iv) s.push_back(ConstWord(v, 32));
  return s;
}

std::vector<Word> Sha256Compress(CircuitBuilder& b, const std::vector<Word>& state,
                                 std::span<const Wire> block) {
  if (state.size() != 8 || block.size() != 512) {
    throw std::invalid_argument("Sha256Compress: bad state or block width");
  }
  std::vector<Word> w(64);
  for (size_t t = 0; t < 16; ++t) w[t] = WordFromBitsBe(block.subspan(32 * t, 32));
  for (size_t t = 16; t < 64; ++t) {
    const Word s0 = Xor3(b, RotrWord(w[t - 15], 7), RotrWord(w[t - 15], 18), ShrWord(w[t - 15], 3));
    const Word s1 = Xor3(b, RotrWord(w[t - 2], 17), RotrWord(w[t - 2], 19), ShrWord(w[t - 2], 10));
    w[t] = AddWord(b, AddWord(b, w[t - 16], s0), AddWord(b, w[t - 7], s1));
  }
  Word a = state[0], bb = state[1], c = state[2], d = state[3];
  Word e = state[4], f = state[5], g = state[6], h = state[7];
  for (size_t t = 0; t < 64; ++t) {
    const Word sig1 = Xor3(b, RotrWord(e, 6), RotrWord(e, 11), RotrWord(e, 25));
    // Ch(e,f,g) = g ^ (e & (f ^ g))
    const Word ch = XorWord(b, g, AndWord(b, e, XorWord(b, f, g)));
    const Word t1 = AddWord(b, AddWord(b, AddWord(b, h, sig1), AddWord(b, ch, ConstWord(kSha256K[t], 32))), w[t]);
    const Word sig0 = Xor3(b, RotrWord(a, 2), RotrWord(a, 13), RotrWord(a, 22));
    // Maj(a,b,c) = a ^ ((a ^ b) & (a ^ c))
    const Word maj = XorWord(b, a, AndWord(b, XorWord(b, a, bb), XorWord(b, a, c)));
    const Word t2 = AddWord(b, sig0, maj);
    h = g;
    g = f;
    f = e;
    e = AddWord(b, d, t1);
    d = c;
    c = bb;
    bb = a;
    a = AddWord(b, t1, t2);
  }
  const Word fin[8] = {a, bb, c, d, e, f, g, h};
  std::vector<Word> out(8);
  for (size_t i = 0; i < 8; ++i) out[i] = AddWord(b, state[i], fin[i]);
  return out;
}

std::vector<Wire> Sha256Bits(CircuitBuilder& b, std::span<const Wire> message) {
  return Sha256Bits(b, message, Sha256InitialState(), 0);
}

std::vector<Wire> Sha256Bits(CircuitBuilder& b, std::span<const Wire> message,
                             const std::vector<Word>& state, size_t prefix_bytes) {
  if (message.size() % 8 || prefix_bytes % 64) {
    throw std::invalid_argument("Sha256Bits: message must be whole bytes after whole blocks");
  }
  const uint64_t total_bits = 8 * prefix_bytes + message.size();
  std::vector<Wire> padded(message.begin(), message.end());
  padded.push_back(kOne);
  while (padded.size() % 512 != 448) padded.push_back(kZero);
  for (int i = 63; i >= 0; --i) padded.push_back(((total_bits >> i) & 1) ? kOne : kZero);
  std::vector<Word> s = state;
  for (size_t off = 0; off < padded.size(); off += 512) {
    s = Sha256Compress(b, s, std::span<const Wire>(padded).subspan(off, 512));
  }
  std::vector<Wire> digest;
  for (const Word& word : s) {
    auto bits = BitsFromWordBe(word);
    digest.insert(digest.end(), bits.begin(), bits.end());
  }
  return digest;
}

BooleanCircuit BuildSha256CompressCircuit() {
  CircuitBuilder b;
  const auto block = b.AddInput(512);
  const auto chain = b.AddInput(256);
  std::vector<Word> state(8);
  for (size_t i = 0; i < 8; ++i) {
    state[i] = WordFromBitsBe(std::span<const Wire>(chain).subspan(32 * i, 32));
  }
  std::vector<Wire> out;
  for (const Word& w : Sha256Compress(b, state, block)) {
    auto bits = BitsFromWordBe(w);
    out.insert(out.end(), bits.begin(), bits.end());
  }
  b.AddOutput(out);
  return b.Build();
}

namespace {

void QuarterRound(CircuitBuilder& b, Word& a, Word& bb, Word& c, Word& d) {
  a = AddWord(b, a, bb);
  d = RotlWord(XorWord(b, d, a), 16);
  c = AddWord(b, c, d);
  bb = RotlWord(XorWord(b, bb, c), 12);
  a = AddWord(b, a, bb);
  d = RotlWord(XorWord(b, d, a), 8);
  c = AddWord(b, c, d);
  bb = RotlWord(XorWord(b, bb, c), 7);
}

}  // namespace

std::vector<Wire> ChaCha20Block(CircuitBuilder& b, std::span<const Wire> key,
                                uint32_t counter, std::span<const Wire> nonce) {
  if (key.size() != 256 || nonce.size() != 96) {
    throw std::invalid_argument("ChaCha20Block: key must be 256 bits, nonce 96 bits");
  }
  std::vector<Word> init(16);
  const uint32_t sigma[4] = {0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
  for (size_t i = 0; i < 4; ++i) init[i] = ConstWord(sigma[i], 32);
  for (size_t i = 0; i < 8; ++i) init[4 + i] = WordFromBitsLe(key.subspan(32 * i, 32));
  init[12] = ConstWord(counter, 32);
  for (size_t i = 0; i < 3; ++i) init[13 + i] = WordFromBitsLe(nonce.subspan(32 * i, 32));

  std::vector<Word> x = init;
  for (int round = 0; round < 10; ++round) {
    QuarterRound(b, x[0], x[4], x[8], x[12]);
    QuarterRound(b, x[1], x[5], x[9], x[13]);
    QuarterRound(b, x[2], x[6], x[10], x[14]);
    QuarterRound(b, x[3], x[7], x[11], x[15]);
    QuarterRound(b, x[0], x[5], x[10], x[15]);
    QuarterRound(b, x[1], x[6], x[11], x[12]);
    QuarterRound(b, x[2], x[7], x[8], x[13]);
    QuarterRound(b, x[3], x[4], x[9], x[14]);
  }
  std::vector<Wire> out;
  out.reserve(512);
  for (size_t i = 0; i < 16; ++i) {
    auto bits = BitsFromWordLe(AddWord(b, x[i], init[i]));
    out.insert(out.end(), bits.begin(), bits.end());
  }
  return out;
}

}  // namespace larch::circuit
