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

#ifndef LARCH_CIRCUIT_CIRCUIT_HPP_
#define LARCH_CIRCUIT_CIRCUIT_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "larch/common/bytes.hpp"

namespace larch::circuit {

enum class GateOp : uint8_t { kXor, kAnd, kInv };

struct Gate {
  GateOp op;
  uint32_t in0;
  uint32_t in1;  // unused for kInv
  uint32_t out;

  bool operator==(const Gate&) const = default;
};

// A Boolean circuit in Bristol Fashion layout: input wires occupy
// [0, num_inputs()), output wires occupy the last num_outputs() ids, and
// gates are listed in evaluation order.
struct BooleanCircuit {
  uint32_t wire_count = 0;
  std::vector<Gate> gates;
  std::vector<uint32_t> input_sizes;
  std::vector<uint32_t> output_sizes;

  size_t num_inputs() const;
  size_t num_outputs() const;
  size_t and_count() const;
  size_t xor_count() const;
  size_t inv_count() const;
  // First wire id of input block / output block i.
  size_t input_offset(size_t block) const;
  size_t output_offset(size_t block) const;

  // Throws std::invalid_argument describing the first violated invariant.
  void Validate() const;
};

class BristolParseError : public std::runtime_error {
 public:
  BristolParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

BooleanCircuit ParseBristol(std::string_view text);
std::string SerializeBristol(const BooleanCircuit& c);
// Throws std::runtime_error if the file cannot be read.
BooleanCircuit LoadBristolFile(const std::string& path);

// One byte per bit (0/1). Throws std::invalid_argument on length mismatch.
std::vector<uint8_t> EvalPlaintext(const BooleanCircuit& c,
                                   const std::vector<uint8_t>& inputs);

// Bit conventions shared by every builder circuit: byte strings map to bits
// most-significant bit first, byte by byte.
std::vector<uint8_t> BytesToBits(ByteSpan bytes);
Bytes BitsToBytes(std::span<const uint8_t> bits);
// Unsigned integer, most-significant bit first, over `width` bits.
std::vector<uint8_t> UintToBits(uint64_t value, size_t width);
uint64_t BitsToUint(std::span<const uint8_t> bits);

}  // namespace larch::circuit

#endif  // LARCH_CIRCUIT_CIRCUIT_HPP_
