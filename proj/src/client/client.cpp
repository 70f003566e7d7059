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

#include "larch/client/client.hpp"

#include "larch/circuit/fido2_circuit.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/ecdsa2p/keys.hpp"
#include "larch/protocol/fido2.hpp"
#include "larch/protocol/pw.hpp"
#include "larch/protocol/totp.hpp"

namespace larch::client {

using protocol::Mechanism;
using wire::Json;

namespace {

HttpRequest MakeRequest(const std::string& path, const std::string& token, std::string body,
                        const char* content_type = "application/json") {
  HttpRequest r;
  r.path = path;
  r.bearer = token;
  r.body = std::move(body);
  r.content_type = content_type;
  return r;
}

HttpResponse SendOrThrow(Transport& t, const HttpRequest& r) {
  try {
    return t.Send(r);
  } catch (const std::runtime_error& e) {
    throw ClientError("TRANSPORT", e.what());
  }
}

// Malformed responses surface as BAD_RESPONSE.
template <typename F>
auto Parse(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ClientError("BAD_RESPONSE", e.what());
  } catch (const std::out_of_range& e) {
    throw ClientError("BAD_RESPONSE", e.what());
  }
}

template <typename T>
const T* FindLast(const std::vector<T>& v, const std::string& name) {
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (it->name == name) return &*it;
  }
  return nullptr;
}

}  // namespace

bool AuditReport::any_flagged() const {
  for (const auto& e : entries) {
    if (e.flagged) return true;
  }
  for (const auto& e : presign_events) {
    if (!e.expected) return true;
  }
  return false;
}

void ThrowIfError(const HttpResponse& response) {
  if (response.ok()) return;
  Json j = Json::parse(response.body, nullptr, false);
  if (j.is_object() && j.contains("error") && j["error"].is_string()) {
    const std::string reason =
        j.contains("reason") && j["reason"].is_string() ? j["reason"].get<std::string>() : "";
    throw ClientError(j["error"].get<std::string>(), reason);
  }
  throw ClientError("TRANSPORT", "HTTP status " + std::to_string(response.status));
}

Client::Client(Transport& transport, VaultData& vault, zk::ZkParams params,
               std::function<void(const VaultData&)> persist)
    : transport_(transport), vault_(vault), params_(params), persist_(std::move(persist)) {}

void Client::Persist() {
  if (persist_) persist_(vault_);
}

Json Client::Call(const std::string& path, const Json& body) {
  const HttpResponse res = SendOrThrow(transport_, MakeRequest(path, vault_.token, body.dump()));
  ThrowIfError(res);
  return Parse([&] { return wire::ParseBody(res.body); });
}

Bytes Client::CallBinary(const std::string& path, ByteSpan body) {
  const HttpResponse res =
      SendOrThrow(transport_, MakeRequest(path, vault_.token, std::string(body.begin(), body.end()),
                                          "application/octet-stream"));
  ThrowIfError(res);
  return Bytes(res.body.begin(), res.body.end());
}

VaultData Client::Enroll(Transport& transport, const std::string& log_url,
                         const EnrollOptions& options) {
  VaultData v;
  v.log_url = log_url;
  v.token = HexEncode(crypto::RandomArray<32>());
  v.archive = protocol::ArchiveKey::Generate();
  v.record_sk = Scalar::RandomNonZero();
  v.pw_keys = pw::ClientKeys::Generate();

  Json body{{"cm", wire::B64(v.archive.cm.digest)},
            {"record_vk", wire::B64(GroupElement::BaseMul(v.record_sk).Encode())},
            {"pw_X", wire::B64(v.pw_keys.X.Encode())}};
  if (options.presignatures > 0) {
    // The master seed is dropped once both halves exist.
    auto out = ecdsa2p::PresignBatch(options.presignatures, crypto::RandomArray<32>(), 0);
    body["presign"] = wire::B64(out.log.Serialize());
    v.presign.push_back(std::move(out.client));
    v.next_base = options.presignatures;
  }
  const HttpResponse res = SendOrThrow(transport, MakeRequest("/enroll", v.token, body.dump()));
  ThrowIfError(res);
  Parse([&] {
    const Json j = wire::ParseBody(res.body);
    v.account_id = wire::GetString(j, "account_id");
    v.fido2_X = wire::GetPoint(j, "fido2_X");
    v.pw_K = wire::GetPoint(j, "pw_K");
    return 0;
  });
  if (v.fido2_X.IsIdentity() || v.pw_K.IsIdentity()) {
    throw ClientError("BAD_RESPONSE", "log returned an identity key");
  }
  return v;
}

GroupElement Client::Fido2Register(const std::string& rp) {
  const auto key = ecdsa2p::ClientCredentialKey::Generate(vault_.fido2_X);
  vault_.fido2.push_back({rp, key.y, key.pk});
  Persist();
  return key.pk;
}

size_t Client::Fido2PresignaturesLeft() const {
  size_t left = 0;
  for (const auto& b : vault_.presign) {
    for (size_t i = 0; i < b.t.size(); ++i) {
      const uint64_t index = b.base_index + i;
      if (index >= vault_.next_index && !b.IsVoid(index)) ++left;
    }
  }
  return left;
}

crypto::Signature Client::Fido2Auth(const std::string& rp, const Bytes32& chal) {
  const Fido2Rp* cred = FindLast(vault_.fido2, rp);
  if (!cred) throw ClientError("UNKNOWN_RP", "no FIDO2 credential for " + rp);

  // Pick the lowest unspent, non-void index and spend it before sending.
  std::optional<uint64_t> index;
  const ecdsa2p::ClientPresignBatch* batch = nullptr;
  for (const auto& b : vault_.presign) {
    for (size_t i = 0; i < b.t.size() && !index; ++i) {
      const uint64_t idx = b.base_index + i;
      if (idx >= vault_.next_index && !b.IsVoid(idx)) {
        index = idx;
        batch = &b;
      }
    }
    if (index) break;
  }
  if (!index) throw ClientError("EXHAUSTED", "no presignatures left; replenish first");
  const ecdsa2p::PresigShare share = batch->Share(*index);
  vault_.next_index = *index + 1;
  Persist();

  fido2::ClientSigner signer(vault_.archive, vault_.record_sk, rp, cred->y, cred->pk, chal,
                             *index, share, params_);
  const Json challenge = Call("/fido2/auth", wire::ToJson(signer.request()));
  const Scalar v1 = Parse([&] {
    fido2::AuthChallenge ch;
    ch.round1.d = wire::GetScalar(challenge, "d");
    ch.round1.e = wire::GetScalar(challenge, "e");
    ch.v_commit.digest = wire::GetArray<32>(challenge, "v_commit");
    return signer.OnChallenge(ch);
  });
  const Json fin = Call("/fido2/auth/finish", {{"index", *index}, {"v", wire::B64(v1.bytes())}});
  fido2::AuthFinishReply reply = Parse([&] {
    return fido2::AuthFinishReply{wire::GetScalar(fin, "v"), wire::GetArray<32>(fin, "v_nonce"),
                                  wire::GetScalar(fin, "s")};
  });
  try {
    return signer.Finish(reply);
  } catch (const ecdsa2p::EcdsaAbort& e) {
    throw ClientError("ABORT", e.what());
  }
}

uint64_t Client::Fido2Replenish(size_t count) {
  if (count == 0) throw std::invalid_argument("count must be positive");
  auto out = ecdsa2p::PresignBatch(count, crypto::RandomArray<32>(), vault_.next_base);
  const Json res = Call("/fido2/presign", {{"batch", wire::B64(out.log.Serialize())}});
  vault_.presign.push_back(std::move(out.client));
  vault_.next_base += count;
  Persist();
  return Parse([&] { return wire::GetU64(res, "batch_id"); });
}

void Client::Fido2Object(uint64_t batch_id) {
  Call("/fido2/presign/object", {{"batch_id", batch_id}});
  std::erase_if(vault_.presign,
                [&](const ecdsa2p::ClientPresignBatch& b) { return b.base_index == batch_id; });
  Persist();
}

totp::TotpId Client::TotpRegister(const std::string& rp, ByteSpan key) {
  const auto split = totp::SplitKey(key);
  for (int attempt = 0;; ++attempt) {
    TotpRp entry{rp, crypto::RandomArray<16>(), split.kclient, true};
    if (entry.id == totp::TotpId{}) continue;
    try {
      Call("/totp/register", {{"id", wire::B64(entry.id)}, {"klog", wire::B64(split.klog)}});
    } catch (const ClientError& e) {
      // A 16-byte collision: resample.
      if (e.code() == "CONFLICT" && attempt < 3) continue;
      throw;
    }
    vault_.totp.push_back(entry);
    Persist();
    return entry.id;
  }
}

void Client::TotpUnregister(const std::string& rp) {
  for (auto& r : vault_.totp) {
    if (r.name == rp && r.active) {
      Call("/totp/unregister", {{"id", wire::B64(r.id)}});
      r.active = false;
    }
  }
  Persist();
}

std::string Client::TotpAuth(const std::string& rp, uint64_t t) {
  const TotpRp* entry = nullptr;
  size_t active = 0;
  for (const auto& r : vault_.totp) {
    if (!r.active) continue;
    ++active;
    if (r.name == rp) entry = &r;
  }
  if (!entry) throw ClientError("UNKNOWN_RP", "no TOTP registration for " + rp);

  totp::ClientSession session(vault_.archive, vault_.record_sk, entry->id, entry->kclient,
                              totp::PaddedSlots(active));
  const Json open = Call("/totp/session/open", {{"mech", "totp"},
                                                {"t", t},
                                                {"n", session.slots()},
                                                {"ct_sig", wire::B64(session.ct_sig())}});
  const gc::SessionMessage ot2 = Parse([&] {
    const auto sid = wire::GetArray<16>(open, "session_id");
    return session.OnOpen(sid, gc::SessionMessage::Decode(wire::GetBytes(open, "message")));
  });
  const auto garbled = Parse([&] {
    return wire::UnpackMessages(CallBinary("/totp/session/msg", ot2.Encode()));
  });
  if (garbled.size() != 2) throw ClientError("BAD_RESPONSE", "expected two session messages");
  const gc::SessionMessage back = Parse([&] {
    try {
      return session.OnGarbled(garbled[0], garbled[1]);
    } catch (const gc::GcError& e) {
      throw ClientError("BAD_RESPONSE", e.what());
    }
  });
  const auto final_msgs = Parse([&] {
    return wire::UnpackMessages(CallBinary("/totp/session/msg", back.Encode()));
  });
  if (final_msgs.size() != 1) throw ClientError("BAD_RESPONSE", "expected the output map");
  try {
    return totp::RenderCode(session.OnOutputMap(final_msgs[0]));
  } catch (const gc::GcError& e) {
    throw ClientError("BAD_RESPONSE", e.what());
  }
}

std::string Client::PwRegisterImpl(const std::string& rp, const std::string* legacy) {
  // Validate the legacy password before touching the log.
  const std::optional<GroupElement> legacy_point =
      legacy ? std::optional<GroupElement>(pw::EncodeLegacyPassword(*legacy)) : std::nullopt;
  const pw::PwId id = crypto::RandomArray<16>();
  const Json res = Call("/pw/register", {{"hash", wire::B64(pw::HashId(id).Encode())}});
  const GroupElement hk = Parse([&] { return wire::GetPoint(res, "hk"); });
  PwRp entry{rp, id, {}, legacy != nullptr};
  GroupElement password;
  if (legacy_point) {
    entry.k_id = pw::KeyShareForPassword(*legacy_point, hk);
    password = *legacy_point;
  } else {
    entry.k_id = pw::RandomKeyShare();
    password = pw::PasswordFromShare(entry.k_id, hk);
  }
  vault_.pw.push_back(entry);
  Persist();
  return pw::RenderPassword(password, entry.legacy);
}

std::string Client::PwRegister(const std::string& rp) { return PwRegisterImpl(rp, nullptr); }

std::string Client::PwImport(const std::string& rp, const std::string& password) {
  return PwRegisterImpl(rp, &password);
}

std::string Client::PwAuth(const std::string& rp) {
  const PwRp* entry = FindLast(vault_.pw, rp);
  if (!entry) throw ClientError("UNKNOWN_RP", "no password registration for " + rp);
  for (int attempt = 0;; ++attempt) {
    const Json list_res = Call("/pw/list", Json::object());
    uint64_t version = 0;
    std::vector<GroupElement> list;
    Parse([&] {
      version = wire::GetU64(list_res, "version");
      for (const auto& e : list_res.at("list")) {
        list.push_back(GroupElement::Parse(Base64Decode(e.get<std::string>())));
      }
      return 0;
    });
    pw::ClientAuth auth;
    try {
      auth = pw::BuildAuthRequest(vault_.pw_keys, entry->id, list, version);
    } catch (const std::invalid_argument& e) {
      throw ClientError("UNKNOWN_RP", std::string("log list lacks this registration: ") + e.what());
    }
    const Bytes ct_sig =
        protocol::SignRecord(vault_.record_sk, Mechanism::kPw, auth.request.ct.Encode());
    Json res;
    try {
      res = Call("/pw/auth", {{"request", wire::B64(auth.request.Serialize())},
                              {"ct_sig", wire::B64(ct_sig)}});
    } catch (const ClientError& e) {
      if (e.code() == protocol::kRejectStale && attempt < 2) continue;
      throw;
    }
    const GroupElement y = Parse([&] { return wire::GetPoint(res, "y"); });
    const GroupElement password = pw::FinishAuth(vault_.pw_keys, vault_.pw_K, auth.r, y, entry->k_id);
    return pw::RenderPassword(password, entry->legacy);
  }
}

AuditReport Client::Audit() {
  const Json res = Call("/audit", {{"from_seq", 0}});
  const GroupElement record_vk = GroupElement::BaseMul(vault_.record_sk);
  AuditReport report;
  Parse([&] {
    for (const auto& j : res.at("records")) {
      const protocol::AuthRecord rec = wire::RecordFromJson(j);
      AuditEntry e;
      e.seq = rec.seq;
      e.ts_ms = rec.ts_ms;
      e.mech = rec.mech;
      if (!protocol::VerifyRecordSignature(record_vk, rec.mech, rec.ct, rec.sig)) {
        e.flagged = true;
        e.reason = "integrity signature invalid";
        report.entries.push_back(e);
        continue;
      }
      switch (rec.mech) {
        case Mechanism::kFido2: {
          const Bytes32 id = fido2::DecryptRpId(vault_.archive.k, ToArray<44>(rec.ct));
          for (const auto& r : vault_.fido2) {
            if (circuit::Fido2RpId(r.name) == id) e.rp = r.name;
          }
          break;
        }
        case Mechanism::kTotp: {
          const totp::TotpId id = totp::DecryptId(vault_.archive.k, ToArray<28>(rec.ct));
          for (const auto& r : vault_.totp) {
            if (r.id == id) e.rp = r.name;
          }
          break;
        }
        case Mechanism::kPw: {
          const GroupElement h = pw::Decrypt(vault_.pw_keys.x, pw::Ciphertext::Decode(rec.ct));
          for (const auto& r : vault_.pw) {
            if (pw::HashId(r.id) == h) e.rp = r.name;
          }
          break;
        }
      }
      if (e.rp.empty()) {
        e.flagged = true;
        e.reason = "no matching relying party";
      }
      report.entries.push_back(e);
    }
    for (const auto& j : res.at("events")) {
      AuditEvent ev;
      ev.ts_ms = wire::GetU64(j, "ts_ms");
      ev.batch_id = wire::GetU64(j, "batch_id");
      ev.count = wire::GetU64(j, "count");
      ev.status = wire::GetString(j, "status");
      for (const auto& b : vault_.presign) ev.expected |= b.base_index == ev.batch_id;
      // Objected batches are gone from the vault but were ours.
      if (ev.status == "DELETED") ev.expected = true;
      report.presign_events.push_back(ev);
    }
    return 0;
  });
  return report;
}

}  // namespace larch::client
