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

#ifndef LARCH_GC_OT_HPP_
#define LARCH_GC_OT_HPP_

#include <vector>

#include "larch/crypto/group.hpp"
#include "larch/gc/garble.hpp"

namespace larch::gc {

// Three-message base OT over P-256 for 128-bit messages:
//   round 1 (sender):   A = a*G
//   round 2 (receiver): B_i = b_i*G + c_i*A
//   round 3 (sender):   E_i,v = m_i,v XOR H(i, a*B_i - v*a*A)
// Malformed or identity points abort with GcError.
class OtSender {
 public:
  OtSender(size_t count, const Bytes32& seed);
  Bytes Round1() const;
  Bytes Round3(ByteSpan round2, const std::vector<std::array<Label, 2>>& messages) const;

 private:
  size_t count_;
  crypto::Scalar a_;
  crypto::GroupElement big_a_;
  crypto::GroupElement a_big_a_;  // a*A
};

class OtReceiver {
 public:
  OtReceiver(std::vector<uint8_t> choices, const Bytes32& seed);
  Bytes Round2(ByteSpan round1);
  std::vector<Label> Finish(ByteSpan round3) const;

 private:
  std::vector<uint8_t> choices_;
  std::vector<crypto::Scalar> b_;
  std::optional<crypto::GroupElement> big_a_;
};

}  // namespace larch::gc

#endif  // LARCH_GC_OT_HPP_
