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

#ifndef LARCH_GC_GARBLE_HPP_
#define LARCH_GC_GARBLE_HPP_

#include <array>
#include <stdexcept>
#include <vector>

#include "larch/circuit/circuit.hpp"
#include "larch/common/bytes.hpp"

namespace larch::gc {

// 128-bit wire label; the last bit of byte 15 is the point-and-permute bit.
using Label = std::array<uint8_t, 16>;

class GcError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Label XorLabel(const Label& a, const Label& b) {
  Label out;
  for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}
inline uint8_t PermuteBit(const Label& l) { return l[15] & 1; }

// Hashes of both labels of each output wire in one output block.
struct DecodeMap {
  uint32_t first_output = 0;  // global index of the block's first output bit
  std::vector<std::array<Bytes16, 2>> entries;

  Bytes Serialize() const;
  static DecodeMap Deserialize(ByteSpan data);
  bool operator==(const DecodeMap&) const = default;
};

// Everything the garbler derives from its seed. Tables hold three 16-byte
// rows per AND gate and nothing for XOR or INV gates.
struct Garbling {
  Label delta{};  // free-XOR offset, permute bit set
  std::vector<Label> input_zero;  // zero-label of every input wire
  Bytes tables;
  std::vector<DecodeMap> decode_maps;  // one per output block

  Label InputLabel(size_t wire, bool bit) const {
    return bit ? XorLabel(input_zero[wire], delta) : input_zero[wire];
  }
};

Garbling Garble(const circuit::BooleanCircuit& c, const Bytes32& seed);

// Returns one label per output wire. Throws GcError on size mismatch.
std::vector<Label> Evaluate(const circuit::BooleanCircuit& c, ByteSpan tables,
                            const std::vector<Label>& input_labels);

// Throws GcError when a label matches neither entry.
std::vector<uint8_t> Decode(const DecodeMap& map, const std::vector<Label>& labels);

}  // namespace larch::gc

#endif  // LARCH_GC_GARBLE_HPP_
