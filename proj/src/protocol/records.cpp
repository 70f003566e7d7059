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

#include "larch/protocol/records.hpp"

namespace larch::protocol {

std::string_view MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kFido2:
      return "fido2";
    case Mechanism::kTotp:
      return "totp";
    case Mechanism::kPw:
      return "pw";
  }
  return "unknown";
}

std::optional<Mechanism> ParseMechanism(std::string_view name) {
  if (name == "fido2") return Mechanism::kFido2;
  if (name == "totp") return Mechanism::kTotp;
  if (name == "pw") return Mechanism::kPw;
  return std::nullopt;
}

size_t CiphertextSize(Mechanism m) {
  switch (m) {
    case Mechanism::kFido2:
      return 44;
    case Mechanism::kTotp:
      return 28;
    case Mechanism::kPw:
      return 66;
  }
  throw std::invalid_argument("unknown mechanism");
}

Bytes AuthRecord::Payload() const {
  ByteWriter w;
  w.U64(ts_ms);
  w.Raw(ct);
  w.Raw(sig);
  return w.Take();
}

Bytes RecordSigningMessage(Mechanism m, ByteSpan ct) {
  ByteWriter w;
  w.Raw(ToBytes("larch-record-v1"));
  w.U8(static_cast<uint8_t>(m));
  w.Raw(ct);
  return w.Take();
}

Bytes SignRecord(const crypto::Scalar& record_sk, Mechanism m, ByteSpan ct) {
  const auto sig = crypto::EcdsaSign(record_sk, RecordSigningMessage(m, ct));
  const auto enc = sig.Encode();
  return Bytes(enc.begin(), enc.end());
}

bool VerifyRecordSignature(const crypto::GroupElement& record_vk, Mechanism m, ByteSpan ct,
                           ByteSpan sig) {
  if (ct.size() != CiphertextSize(m)) return false;
  return crypto::EcdsaVerify(record_vk, RecordSigningMessage(m, ct), sig);
}

}  // namespace larch::protocol
