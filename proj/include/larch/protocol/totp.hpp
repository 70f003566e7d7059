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

#ifndef LARCH_PROTOCOL_TOTP_HPP_
#define LARCH_PROTOCOL_TOTP_HPP_

// TOTP authentication as a garbled-circuit session: the log garbles, the
// client evaluates. The log decodes (ct, valid) from the labels the client
// sends back and must append its record before releasing the client's
// decode map.

#include <memory>
#include <string>
#include <vector>

#include "larch/circuit/totp_circuit.hpp"
#include "larch/gc/session.hpp"
#include "larch/protocol/archive.hpp"

namespace larch::totp {

using circuit::TotpId;
using Ciphertext = std::array<uint8_t, 28>;  // nonce (12) || body (16)

inline constexpr uint64_t kStepSeconds = 30;
inline constexpr int kDigits = 6;

uint64_t TimeStep(uint64_t unix_seconds);
bool WithinSkew(uint64_t t, uint64_t now_step, uint64_t skew_steps);

// HMAC keys longer than 32 bytes are rejected; shorter ones are zero padded,
// which leaves the HMAC unchanged.
Bytes32 PadKey(ByteSpan key);

struct KeySplit {
  Bytes32 kclient{};
  Bytes32 klog{};
};
// kclient is uniform; kclient XOR klog is the padded key.
KeySplit SplitKey(ByteSpan key);

// Next power of two, at least one.
size_t PaddedSlots(size_t count);

// Cached per slot count; shared so in-flight sessions keep their circuit.
std::shared_ptr<const circuit::BooleanCircuit> TotpCircuit(size_t slots);

Ciphertext EncryptId(const Bytes32& k, const std::array<uint8_t, 12>& nonce, const TotpId& id);
TotpId DecryptId(const Bytes32& k, const Ciphertext& ct);

// The 31-bit truncated value reduced to six zero-padded digits.
std::string RenderCode(uint32_t truncated);

struct LogEntry {
  TotpId id{};
  Bytes32 klog{};
};

// Pads the registered entries with dummies (all-zero id, random key) up to
// `slots`. Throws std::invalid_argument if there are more entries than slots.
circuit::TotpLogInput BuildLogInput(const crypto::Commitment& cm,
                                    const std::vector<LogEntry>& entries, size_t slots,
                                    uint64_t t);

class ClientSession {
 public:
  ClientSession(const protocol::ArchiveKey& archive, const crypto::Scalar& record_sk,
                const TotpId& id, const Bytes32& kclient, size_t slots);

  const Ciphertext& ct() const { return ct_; }
  const Bytes& ct_sig() const { return ct_sig_; }
  size_t slots() const { return slots_; }

  // The log assigns the session id when it opens the session.
  gc::SessionMessage OnOpen(const Bytes16& session_id, const gc::SessionMessage& ot_round1);
  // Takes OT_ROUND_3 and GARBLE_BLOB; returns EVAL_LABELS_BACK.
  gc::SessionMessage OnGarbled(const gc::SessionMessage& ot_round3,
                               const gc::SessionMessage& blob);
  // Returns the 31-bit truncated code.
  uint32_t OnOutputMap(const gc::SessionMessage& map);

 private:
  size_t slots_;
  std::shared_ptr<const circuit::BooleanCircuit> circuit_;
  circuit::TotpClientInput input_;
  Ciphertext ct_{};
  Bytes ct_sig_;
  std::unique_ptr<gc::EvaluatorSession> evaluator_;
};

class LogSession {
 public:
  LogSession(size_t slots, const circuit::TotpLogInput& input, const Bytes16& session_id);

  gc::SessionMessage Start();
  std::vector<gc::SessionMessage> OnOtRound2(const gc::SessionMessage& m);
  circuit::TotpLogOutput OnLabelsBack(const gc::SessionMessage& m);
  // Client decode map; call only after the record is durable.
  gc::SessionMessage Release();

 private:
  std::shared_ptr<const circuit::BooleanCircuit> circuit_;
  gc::GarblerSession garbler_;
};

}  // namespace larch::totp

#endif  // LARCH_PROTOCOL_TOTP_HPP_
