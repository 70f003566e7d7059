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

#ifndef LARCH_CIRCUIT_BUILDER_HPP_
#define LARCH_CIRCUIT_BUILDER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "larch/circuit/circuit.hpp"

namespace larch::circuit {

using Wire = uint32_t;
inline constexpr Wire kZero = 0xFFFFFFFEu;
inline constexpr Wire kOne = 0xFFFFFFFFu;

// A word is a little-endian wire vector: element 0 is the least-significant
// bit. Input bit vectors, by contrast, are MSB-first per byte.
using Word = std::vector<Wire>;

// Incremental circuit construction with constant folding. All inputs must be
// declared before the first gate is emitted.
class CircuitBuilder {
 public:
  std::vector<Wire> AddInput(size_t bits);
  void AddOutput(std::span<const Wire> wires);

  Wire Xor(Wire a, Wire b);
  Wire And(Wire a, Wire b);
  Wire Not(Wire a);
  Wire Or(Wire a, Wire b);
  // s ? b : a, one AND.
  Wire Mux(Wire s, Wire a, Wire b);

  static bool IsConst(Wire w) { return w == kZero || w == kOne; }
  size_t and_count() const { return and_count_; }

  // Emits a circuit whose outputs occupy the trailing wire ids. Outputs that
  // are constants, inputs, or repeated wires get fresh copy gates.
  BooleanCircuit Build() const;

 private:
  Wire Emit(GateOp op, Wire a, Wire b);

  std::vector<uint32_t> input_sizes_;
  std::vector<std::vector<Wire>> outputs_;
  std::vector<Gate> gates_;
  std::vector<Wire> inv_source_;  // indexed by wire; kZero when not an INV output
  uint32_t next_wire_ = 0;
  size_t and_count_ = 0;
};

// Word-level gadgets. Words passed together must have equal width.
Word ConstWord(uint64_t value, size_t width);
Word XorWord(CircuitBuilder& b, const Word& x, const Word& y);
Word AndWord(CircuitBuilder& b, const Word& x, const Word& y);
Word AddWord(CircuitBuilder& b, const Word& x, const Word& y);  // mod 2^width
Word RotrWord(const Word& x, size_t n);
Word RotlWord(const Word& x, size_t n);
Word ShrWord(const Word& x, size_t n);
Word MuxWord(CircuitBuilder& b, Wire s, const Word& x, const Word& y);  // s ? y : x

// Bit-vector helpers.
std::vector<Wire> ConstBits(ByteSpan bytes);
std::vector<Wire> XorBits(CircuitBuilder& b, std::span<const Wire> x,
                          std::span<const Wire> y);
Wire EqualBits(CircuitBuilder& b, std::span<const Wire> x, std::span<const Wire> y);
Wire AndAll(CircuitBuilder& b, std::span<const Wire> bits);
Wire OrAll(CircuitBuilder& b, std::span<const Wire> bits);

// Conversions between MSB-first byte-stream bits and words.
Word WordFromBitsBe(std::span<const Wire> bits);
std::vector<Wire> BitsFromWordBe(const Word& w);
Word WordFromBitsLe(std::span<const Wire> bits);
std::vector<Wire> BitsFromWordLe(const Word& w);

// SHA-256 compression of one 512-bit block into an 8-word state.
std::vector<Word> Sha256Compress(CircuitBuilder& b, const std::vector<Word>& state,
                                 std::span<const Wire> block);
std::vector<Word> Sha256InitialState();
// Full SHA-256 of a bit string whose length is fixed at build time.
std::vector<Wire> Sha256Bits(CircuitBuilder& b, std::span<const Wire> message);
std::vector<Wire> Sha256Bits(CircuitBuilder& b, std::span<const Wire> message,
                             const std::vector<Word>& state, size_t prefix_bytes);

// Standalone compression circuit: inputs (block 512, chaining state 256),
// output the next 256-bit state; all MSB-first with big-endian words.
BooleanCircuit BuildSha256CompressCircuit();

// One 64-byte ChaCha20 keystream block for a 256-bit key and 96-bit nonce.
std::vector<Wire> ChaCha20Block(CircuitBuilder& b, std::span<const Wire> key,
                                uint32_t counter, std::span<const Wire> nonce);

}  // namespace larch::circuit

#endif  // LARCH_CIRCUIT_BUILDER_HPP_
