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

#ifndef LARCH_PROTOCOL_RECORDS_HPP_
#define LARCH_PROTOCOL_RECORDS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "larch/common/bytes.hpp"
#include "larch/crypto/ecdsa.hpp"

namespace larch::protocol {

enum class Mechanism : uint8_t { kFido2 = 1, kTotp = 2, kPw = 3 };

std::string_view MechanismName(Mechanism m);
std::optional<Mechanism> ParseMechanism(std::string_view name);

// Fixed ciphertext lengths per mechanism.
size_t CiphertextSize(Mechanism m);

// Rejection codes shared by the log service and the client.
inline constexpr std::string_view kRejectProof = "REJECT_PROOF";
inline constexpr std::string_view kRejectIntegrity = "REJECT_INTEGRITY";
inline constexpr std::string_view kRejectReplay = "REJECT_REPLAY";
inline constexpr std::string_view kRejectInactive = "REJECT_INACTIVE";
inline constexpr std::string_view kRejectTime = "REJECT_TIME";
inline constexpr std::string_view kRejectUnknown = "REJECT_UNKNOWN";
inline constexpr std::string_view kRejectStale = "REJECT_STALE";
inline constexpr std::string_view kAlreadyActive = "ALREADY_ACTIVE";
inline constexpr std::string_view kAbort = "ABORT";

// A protocol-level refusal carrying one of the codes above.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(std::string_view code, const std::string& detail)
      : std::runtime_error(std::string(code) + ": " + detail), code_(code), detail_(detail) {}
  const std::string& code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

// One appended authentication record. The payload proper is
// ts (u64 ms) | ct | integrity signature (64); seq, ip and mechanism are
// framing kept by the store.
struct AuthRecord {
  uint64_t seq = 0;
  uint64_t ts_ms = 0;
  std::string ip;
  Mechanism mech = Mechanism::kFido2;
  Bytes ct;
  Bytes sig;

  Bytes Payload() const;
  bool operator==(const AuthRecord&) const = default;
};

// Message the client signs with its record key: domain tag, mechanism, ct.
Bytes RecordSigningMessage(Mechanism m, ByteSpan ct);
Bytes SignRecord(const crypto::Scalar& record_sk, Mechanism m, ByteSpan ct);
bool VerifyRecordSignature(const crypto::GroupElement& record_vk, Mechanism m, ByteSpan ct,
                           ByteSpan sig);

}  // namespace larch::protocol

#endif  // LARCH_PROTOCOL_RECORDS_HPP_
