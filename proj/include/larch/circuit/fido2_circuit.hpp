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

#ifndef LARCH_CIRCUIT_FIDO2_CIRCUIT_HPP_
#define LARCH_CIRCUIT_FIDO2_CIRCUIT_HPP_

#include <vector>

#include "larch/circuit/circuit.hpp"
#include "larch/circuit/params.hpp"

namespace larch::circuit {

// Witness block: k, r, id, chal, nonce.
struct Fido2Witness {
  Bytes32 k{};
  Bytes32 r{};
  Bytes32 id{};
  Bytes32 chal{};
  std::array<uint8_t, 12> nonce{};
};

// Public block: cm, ct = nonce || (keystream XOR id), dgst.
struct Fido2Public {
  Bytes32 cm{};
  std::array<uint8_t, 44> ct{};
  Bytes32 dgst{};

  bool operator==(const Fido2Public&) const = default;
};

inline constexpr size_t kFido2WitnessBits = 8 * (32 * 4 + 12);
inline constexpr size_t kFido2PublicBits = 8 * (32 + 44 + 32);

// Output bit is 1 iff cm = SHA-256(k || r), ct decrypts to id under k with
// the witness nonce, and dgst = SHA-256(id || chal).
BooleanCircuit BuildFido2Circuit(const CircuitParams& p = {});

std::vector<uint8_t> Fido2WitnessBits(const Fido2Witness& w);
std::vector<uint8_t> Fido2PublicBits(const Fido2Public& pub);

// Relying-party name as UTF-8, zero-padded or truncated to 32 bytes.
Bytes32 Fido2RpId(std::string_view rp_name);

}  // namespace larch::circuit

#endif  // LARCH_CIRCUIT_FIDO2_CIRCUIT_HPP_
