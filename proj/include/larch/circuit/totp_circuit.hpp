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

#ifndef LARCH_CIRCUIT_TOTP_CIRCUIT_HPP_
#define LARCH_CIRCUIT_TOTP_CIRCUIT_HPP_

#include <cstdint>
#include <vector>

#include "larch/circuit/circuit.hpp"
#include "larch/circuit/params.hpp"

namespace larch::circuit {

using TotpId = std::array<uint8_t, 16>;

// Evaluator (client) input block.
struct TotpClientInput {
  Bytes32 k{};
  Bytes32 r{};
  TotpId id{};
  Bytes32 kclient{};  // XOR share of the zero-padded HMAC key
  std::array<uint8_t, 12> nonce{};
};

// Garbler (log) input block; ids and klogs have exactly totp_slots entries.
struct TotpLogInput {
  Bytes32 cm{};
  std::vector<TotpId> ids;
  std::vector<Bytes32> klogs;
  uint64_t t = 0;
};

struct TotpLogOutput {
  std::array<uint8_t, 28> ct{};  // nonce || (keystream[0..16] XOR id)
  bool valid = false;

  bool operator==(const TotpLogOutput&) const = default;
};

inline constexpr size_t kTotpClientBits = 8 * (32 + 32 + 16 + 32 + 12);
inline constexpr size_t kTotpLogOutputBits = 8 * 28 + 1;
size_t TotpLogBits(const CircuitParams& p);

// Two input blocks (client, log) and two output blocks: a 31-bit truncated
// HMAC-SHA256 value for the client, and (ct, valid) for the log.
BooleanCircuit BuildTotpCircuit(const CircuitParams& p);

std::vector<uint8_t> TotpClientBits(const TotpClientInput& in);
std::vector<uint8_t> TotpLogBits(const TotpLogInput& in, const CircuitParams& p);
uint32_t DecodeTotpCode(std::span<const uint8_t> bits);  // 31-bit value
TotpLogOutput DecodeTotpLogOutput(std::span<const uint8_t> bits);

}  // namespace larch::circuit

#endif  // LARCH_CIRCUIT_TOTP_CIRCUIT_HPP_
