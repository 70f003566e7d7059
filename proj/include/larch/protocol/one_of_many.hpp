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

#ifndef LARCH_PROTOCOL_ONE_OF_MANY_HPP_
#define LARCH_PROTOCOL_ONE_OF_MANY_HPP_

// Log-size proof that some element of an ordered list equals base^w for a
// witness w known to the prover, without revealing which element. The list
// entries are treated as commitments to zero; the index is committed bit by
// bit with Pedersen commitments under two fixed generators.

#include <vector>

#include "larch/crypto/group.hpp"

namespace larch::pw {

using crypto::GroupElement;
using crypto::Scalar;

struct OneOfManyProof {
  // One level per index bit.
  struct Level {
    GroupElement cl, ca, cb, cd;
    Scalar f, za, zb;
    bool operator==(const Level&) const = default;
  };
  static constexpr size_t kLevelSize = 4 * GroupElement::kSize + 3 * Scalar::kSize;

  std::vector<Level> levels;
  Scalar zd;

  // levels u8 | per level: cl ca cb cd f za zb | zd
  Bytes Serialize() const;
  // Throws std::invalid_argument / std::out_of_range on malformed input.
  static OneOfManyProof Deserialize(ByteSpan data);
  bool operator==(const OneOfManyProof&) const = default;
};

// The Pedersen generators used for the index-bit commitments.
const GroupElement& OneOfManyG();
const GroupElement& OneOfManyH();

// Requires a power-of-two list with list[index] == exponent * base; throws
// std::invalid_argument otherwise. With a single element the proof degenerates
// to revealing the exponent, so callers needing privacy pad to at least two.
OneOfManyProof ProveOneOfMany(const std::vector<GroupElement>& list, const GroupElement& base,
                              size_t index, const Scalar& exponent, ByteSpan context);

// Total: returns false for any malformed or mismatched proof.
bool VerifyOneOfMany(const OneOfManyProof& proof, const std::vector<GroupElement>& list,
                     const GroupElement& base, ByteSpan context);

}  // namespace larch::pw

#endif  // LARCH_PROTOCOL_ONE_OF_MANY_HPP_
