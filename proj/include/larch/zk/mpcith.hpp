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

#ifndef LARCH_ZK_MPCITH_HPP_
#define LARCH_ZK_MPCITH_HPP_

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "larch/circuit/circuit.hpp"
#include "larch/common/bytes.hpp"

namespace larch::zk {

// Repetition count profile. Soundness error is (2/3)^reps.
struct ZkParams {
  size_t reps = 137;

  static ZkParams Test() { return {20}; }
  static ZkParams Prod() { return {137}; }
  // "test" or "prod"; throws std::invalid_argument otherwise.
  static ZkParams FromProfile(std::string_view name);
  // -log2 of the soundness error.
  double SoundnessBits() const;
};

class ZkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Opened data for one repetition with challenge e: parties e and e+1 (mod 3)
// are opened, party e+2 is represented only by its commitment.
struct RepetitionProof {
  uint8_t e = 0;
  Bytes32 unopened_commitment{};
  Bytes16 seed_e{};
  Bytes16 seed_next{};
  Bytes x2;    // party 2's packed witness share; present iff party 2 is opened
  Bytes view;  // packed AND-gate outputs of party e+1

  bool operator==(const RepetitionProof&) const = default;
};

struct MpcProof {
  static constexpr uint8_t kVersion = 1;
  std::vector<RepetitionProof> reps;

  // version u8 | reps u32 | per repetition: u32 length | block.
  Bytes Serialize() const;
  // Throws std::out_of_range / std::invalid_argument on malformed input.
  static MpcProof Deserialize(ByteSpan data);

  bool operator==(const MpcProof&) const = default;
};

// The circuit has a witness input block, optionally followed by a public
// block, and a single output bit. `context` is bound into the challenge.
// Throws ZkError when the witness does not make the output 1.
MpcProof Prove(const circuit::BooleanCircuit& c, const std::vector<uint8_t>& witness,
               const std::vector<uint8_t>& publics, const ZkParams& params,
               ByteSpan context = {});

// Total: malformed proofs yield false.
bool Verify(const circuit::BooleanCircuit& c, const std::vector<uint8_t>& publics,
            const MpcProof& proof, ByteSpan context = {});
bool Verify(const circuit::BooleanCircuit& c, const std::vector<uint8_t>& publics,
            ByteSpan proof_bytes, ByteSpan context = {});

// Exposed for tests: party 0/1 witness share derived from a seed, packed
// MSB-first, and the trit expansion of a challenge digest.
Bytes DeriveInputShare(const Bytes16& seed, size_t witness_bits);
std::vector<uint8_t> ChallengeTrits(const Bytes32& digest, size_t reps);
// Fiat-Shamir digest; `transcript` holds, per repetition, the three output
// shares (one byte each) followed by the three party commitments.
Bytes32 ChallengeDigest(const circuit::BooleanCircuit& c, const std::vector<uint8_t>& publics,
                        ByteSpan transcript, ByteSpan context);

}  // namespace larch::zk

#endif  // LARCH_ZK_MPCITH_HPP_
