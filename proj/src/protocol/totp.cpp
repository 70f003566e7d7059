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

#include "larch/protocol/totp.hpp"

#include <cstdio>
#include <map>
#include <mutex>

#include "larch/crypto/chacha20.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/protocol/records.hpp"

namespace larch::totp {

uint64_t TimeStep(uint64_t unix_seconds) { return unix_seconds / kStepSeconds; }

bool WithinSkew(uint64_t t, uint64_t now_step, uint64_t skew_steps) {
  const uint64_t diff = t > now_step ? t - now_step : now_step - t;
  return diff <= skew_steps;
}

Bytes32 PadKey(ByteSpan key) {
  if (key.empty() || key.size() > 32) {
    throw std::invalid_argument("TOTP key must be 1 to 32 bytes");
  }
  Bytes32 out{};
  std::copy(key.begin(), key.end(), out.begin());
  return out;
}

KeySplit SplitKey(ByteSpan key) {
  const Bytes32 padded = PadKey(key);
  KeySplit s;
  s.kclient = crypto::RandomArray<32>();
  for (size_t i = 0; i < 32; ++i) s.klog[i] = padded[i] ^ s.kclient[i];
  return s;
}

size_t PaddedSlots(size_t count) {
  size_t n = 1;
  while (n < count) n <<= 1;
  return n;
}

std::shared_ptr<const circuit::BooleanCircuit> TotpCircuit(size_t slots) {
  static std::mutex mu;
  static std::map<size_t, std::shared_ptr<const circuit::BooleanCircuit>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[slots];
  if (!entry) {
    circuit::CircuitParams p;
    p.totp_slots = slots;
    entry = std::make_shared<const circuit::BooleanCircuit>(circuit::BuildTotpCircuit(p));
  }
  return entry;
}

Ciphertext EncryptId(const Bytes32& k, const std::array<uint8_t, 12>& nonce, const TotpId& id) {
  const Bytes body = crypto::StreamEncrypt(k, nonce, id);
  Ciphertext ct;
  std::copy(nonce.begin(), nonce.end(), ct.begin());
  std::copy(body.begin(), body.end(), ct.begin() + 12);
  return ct;
}

TotpId DecryptId(const Bytes32& k, const Ciphertext& ct) {
  const ByteSpan span(ct);
  return ToArray<16>(crypto::StreamDecrypt(k, span.subspan(0, 12), span.subspan(12)));
}

std::string RenderCode(uint32_t truncated) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06u", truncated % 1000000u);
  return buf;
}

circuit::TotpLogInput BuildLogInput(const crypto::Commitment& cm,
                                    const std::vector<LogEntry>& entries, size_t slots,
                                    uint64_t t) {
  if (entries.size() > slots) throw std::invalid_argument("more entries than slots");
  circuit::TotpLogInput in;
  in.cm = cm.digest;
  in.t = t;
  for (const auto& e : entries) {
    in.ids.push_back(e.id);
    in.klogs.push_back(e.klog);
  }
  while (in.ids.size() < slots) {
    in.ids.push_back(TotpId{});
    in.klogs.push_back(crypto::RandomArray<32>());
  }
  return in;
}

ClientSession::ClientSession(const protocol::ArchiveKey& archive,
                             const crypto::Scalar& record_sk, const TotpId& id,
                             const Bytes32& kclient, size_t slots)
    : slots_(slots), circuit_(TotpCircuit(slots)) {
  input_.k = archive.k;
  input_.r = archive.r;
  input_.id = id;
  input_.kclient = kclient;
  input_.nonce = crypto::RandomArray<12>();
  // The record ciphertext is a function of client inputs only, so the client
  // can sign it up front and the log checks the signature against the
  // circuit output.
  ct_ = EncryptId(archive.k, input_.nonce, id);
  ct_sig_ = protocol::SignRecord(record_sk, protocol::Mechanism::kTotp, ct_);
}

gc::SessionMessage ClientSession::OnOpen(const Bytes16& session_id,
                                         const gc::SessionMessage& ot_round1) {
  evaluator_ = std::make_unique<gc::EvaluatorSession>(
      *circuit_, circuit::TotpClientBits(input_), session_id, crypto::RandomArray<32>());
  return evaluator_->OnOtRound1(ot_round1);
}

gc::SessionMessage ClientSession::OnGarbled(const gc::SessionMessage& ot_round3,
                                            const gc::SessionMessage& blob) {
  if (!evaluator_) throw gc::GcError("session not opened");
  evaluator_->OnOtRound3(ot_round3);
  return evaluator_->OnGarbleBlob(blob);
}

uint32_t ClientSession::OnOutputMap(const gc::SessionMessage& map) {
  if (!evaluator_) throw gc::GcError("session not opened");
  return circuit::DecodeTotpCode(evaluator_->OnOutputMap(map));
}

LogSession::LogSession(size_t slots, const circuit::TotpLogInput& input,
                       const Bytes16& session_id)
    : circuit_(TotpCircuit(slots)),
      garbler_(*circuit_, [&] {
        circuit::CircuitParams p;
        p.totp_slots = slots;
        return circuit::TotpLogBits(input, p);
      }(), session_id, crypto::RandomArray<32>()) {}

gc::SessionMessage LogSession::Start() { return garbler_.Start(); }

std::vector<gc::SessionMessage> LogSession::OnOtRound2(const gc::SessionMessage& m) {
  return garbler_.OnOtRound2(m);
}

circuit::TotpLogOutput LogSession::OnLabelsBack(const gc::SessionMessage& m) {
  return circuit::DecodeTotpLogOutput(garbler_.OnLabelsBack(m));
}

gc::SessionMessage LogSession::Release() { return garbler_.Finish(); }

}  // namespace larch::totp
