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

#ifndef LARCH_CIRCUIT_PARAMS_HPP_
#define LARCH_CIRCUIT_PARAMS_HPP_

#include <cstddef>
#include <stdexcept>

namespace larch::circuit {

// Fixed message layouts shared by the circuit builders and the protocols.
struct CircuitParams {
  static constexpr size_t kRpIdLen = 32;      // FIDO2 relying-party id, zero-padded
  static constexpr size_t kChalLen = 32;
  static constexpr size_t kKeyLen = 32;
  static constexpr size_t kRandLen = 32;      // commitment opening
  static constexpr size_t kNonceLen = 12;
  static constexpr size_t kTotpIdLen = 16;    // TOTP relying-party id
  static constexpr size_t kTotpKeyLen = 32;   // HMAC key, zero-padded
  static constexpr size_t kTotpCodeBits = 31;

  // Number of TOTP relying-party slots; a power of two.
  size_t totp_slots = 16;

  void Validate() const {
    if (totp_slots == 0 || (totp_slots & (totp_slots - 1)) != 0) {
      throw std::invalid_argument("totp_slots must be a power of two");
    }
  }
};

}  // namespace larch::circuit

#endif  // LARCH_CIRCUIT_PARAMS_HPP_
