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

#include "larch/log/service.hpp"

#include <chrono>
#include <filesystem>
#include <optional>

#include "larch/crypto/hash.hpp"
#include "larch/ecdsa2p/keys.hpp"
#include "larch/ecdsa2p/presign.hpp"
#include "larch/log/journal.hpp"
#include "larch/protocol/fido2.hpp"
#include "larch/protocol/pw.hpp"
#include "larch/protocol/totp.hpp"
#include "larch/protocol/wire.hpp"

namespace larch::log {

namespace fs = std::filesystem;
using crypto::GroupElement;
using crypto::Scalar;
using protocol::Mechanism;
using protocol::ProtocolError;
using wire::Json;

namespace {

constexpr uint64_t kSessionTtlMs = 5 * 60 * 1000;
constexpr size_t kMaxPresignBatch = 1 << 16;

// Errors that map to HTTP statuses other than 403.
class HttpError : public std::runtime_error {
 public:
  HttpError(int status, std::string_view code, const std::string& reason)
      : std::runtime_error(reason), status_(status), code_(code) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

HttpResponse JsonResponse(const Json& j, int status = 200) {
  HttpResponse r;
  r.status = status;
  r.body = j.dump();
  return r;
}

HttpResponse BinaryResponse(Bytes body) {
  HttpResponse r;
  r.content_type = "application/octet-stream";
  r.body.assign(body.begin(), body.end());
  return r;
}

HttpResponse ErrorResponse(int status, std::string_view code, const std::string& reason) {
  return JsonResponse(wire::ErrorBody(code, reason), status);
}

Bytes32 TokenHash(std::string_view token) {
  return crypto::Sha256(Concat({ToBytes("larch-token-v1"), ToBytes(token)}));
}

}  // namespace

struct PresignState {
  uint64_t batch_id = 0;
  uint64_t created_ms = 0;
  uint64_t deleted_ms = 0;
  ecdsa2p::LogPresignBatch batch;
  std::vector<bool> consumed;
  bool deleted = false;
};

struct Account {
  std::string id;
  Bytes32 token_hash{};
  crypto::Commitment cm{};
  GroupElement record_vk;
  ecdsa2p::LogSigningKey fido2;
  pw::LogKeys pw_log;
  GroupElement pw_X;

  // Guarded by mu. Everything above is immutable after creation.
  std::mutex mu;
  std::unique_ptr<Journal> journal;
  std::vector<PresignState> batches;
  std::vector<totp::LogEntry> totp;
  uint64_t totp_version = 0;
  std::vector<GroupElement> pw_hashes;
  std::vector<GroupElement> pw_padded;
  uint64_t pw_version = 0;
  std::vector<protocol::AuthRecord> records;
  std::map<uint64_t, std::unique_ptr<fido2::LogSigner>> pending;
};

struct TotpPending {
  std::mutex mu;
  std::shared_ptr<Account> account;
  std::unique_ptr<totp::LogSession> session;
  Bytes ct_sig;
  std::string ip;
  uint64_t created_ms = 0;
};

namespace {

// account: token hash | cm | record vk | x | pw k | pw X
Event AccountEvent(const Account& a) {
  ByteWriter w;
  w.Raw(a.token_hash);
  w.Raw(a.cm.digest);
  w.Raw(a.record_vk.Encode());
  w.Raw(a.fido2.x.bytes());
  w.Raw(a.pw_log.k.bytes());
  w.Raw(a.pw_X.Encode());
  return {EventType::kAccount, w.Take()};
}

std::shared_ptr<Account> AccountFromEvent(const Event& e) {
  if (e.type != EventType::kAccount) throw JournalError("journal does not start with account");
  ByteReader r(e.payload);
  auto a = std::make_shared<Account>();
  a->token_hash = r.Fixed<32>();
  a->cm.digest = r.Fixed<32>();
  a->record_vk = GroupElement::Parse(r.Raw(33));
  a->fido2.x = Scalar::Parse(r.Raw(32));
  a->fido2.X = GroupElement::BaseMul(a->fido2.x);
  a->pw_log.k = Scalar::Parse(r.Raw(32));
  a->pw_log.K = GroupElement::BaseMul(a->pw_log.k);
  a->pw_X = GroupElement::Parse(r.Raw(33));
  r.ExpectDone();
  a->id = HexEncode(ByteSpan(a->token_hash).subspan(0, 16));
  return a;
}

// Dummies are derived from the log's secret so that a given list version is
// stable across restarts and unpredictable to clients.
void RebuildPwList(Account& a) {
  a.pw_padded = a.pw_hashes;
  const size_t n = pw::PaddedSize(a.pw_hashes.size());
  for (size_t i = a.pw_hashes.size(); i < n; ++i) {
    ByteWriter w;
    w.Raw(ToBytes("larch-pw-dummy"));
    w.Raw(a.pw_log.k.bytes());
    w.U64(a.pw_version);
    w.U64(i);
    a.pw_padded.push_back(crypto::HashToGroup(w.bytes()));
  }
}

PresignState* FindBatch(Account& a, uint64_t index) {
  for (auto& b : a.batches) {
    if (b.batch.Contains(index)) return &b;
  }
  return nullptr;
}

void ApplyEvent(Account& a, const Event& e) {
  ByteReader r(e.payload);
  switch (e.type) {
    case EventType::kPresignBatch: {
      PresignState s;
      s.batch_id = r.U64();
      s.created_ms = r.U64();
      s.batch = ecdsa2p::LogPresignBatch::Deserialize(r.Sized());
      s.consumed.assign(s.batch.entries.size(), false);
      a.batches.push_back(std::move(s));
      break;
    }
    case EventType::kPresignObject: {
      const uint64_t id = r.U64();
      const uint64_t ts = r.U64();
      for (auto& b : a.batches) {
        if (b.batch_id == id) {
          b.deleted = true;
          b.deleted_ms = ts;
        }
      }
      break;
    }
    case EventType::kRecord: {
      protocol::AuthRecord rec;
      rec.seq = r.U64();
      rec.ts_ms = r.U64();
      const ByteSpan ip = r.Sized(256);
      rec.ip.assign(ip.begin(), ip.end());
      rec.mech = static_cast<Mechanism>(r.U8());
      const ByteSpan ct = r.Sized(1024);
      rec.ct.assign(ct.begin(), ct.end());
      const ByteSpan sig = r.Sized(1024);
      rec.sig.assign(sig.begin(), sig.end());
      const bool has_index = r.U8() != 0;
      const uint64_t index = r.U64();
      if (rec.seq != a.records.size()) throw JournalError("record sequence gap");
      if (has_index) {
        PresignState* b = FindBatch(a, index);
        if (!b) throw JournalError("record consumes an unknown presignature");
        b->consumed[index - b->batch.base_index] = true;
      }
      a.records.push_back(std::move(rec));
      break;
    }
    case EventType::kTotpRegister: {
      totp::LogEntry entry;
      entry.id = r.Fixed<16>();
      entry.klog = r.Fixed<32>();
      a.totp.push_back(entry);
      ++a.totp_version;
      break;
    }
    case EventType::kTotpUnregister: {
      const auto id = r.Fixed<16>();
      std::erase_if(a.totp, [&](const totp::LogEntry& x) { return x.id == id; });
      ++a.totp_version;
      break;
    }
    case EventType::kPwRegister: {
      a.pw_hashes.push_back(GroupElement::Parse(r.Raw(33)));
      ++a.pw_version;
      RebuildPwList(a);
      break;
    }
    case EventType::kAccount:
      throw JournalError("duplicate account event");
    default:
      throw JournalError("unknown event type");
  }
  r.ExpectDone();
}

// Appends then applies, so memory never runs ahead of the file.
void Commit(Account& a, const Event& e) {
  a.journal->Append(e);
  ApplyEvent(a, e);
}

Event RecordEvent(const protocol::AuthRecord& rec, std::optional<uint64_t> index) {
  ByteWriter w;
  w.U64(rec.seq);
  w.U64(rec.ts_ms);
  w.Sized(ToBytes(rec.ip));
  w.U8(static_cast<uint8_t>(rec.mech));
  w.Sized(rec.ct);
  w.Sized(rec.sig);
  w.U8(index ? 1 : 0);
  w.U64(index.value_or(0));
  return {EventType::kRecord, w.Take()};
}

const char* BatchStatus(const PresignState& b, uint64_t now, uint64_t window_ms) {
  if (b.deleted) return "DELETED";
  return now >= b.created_ms + window_ms ? "ACTIVE" : "PENDING";
}

}  // namespace

LogService::LogService(ServiceConfig config) : config_(std::move(config)) {
  if (config_.data_dir.empty()) throw std::invalid_argument("data_dir is required");
  const fs::path dir = fs::path(config_.data_dir) / "accounts";
  fs::create_directories(dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".journal") continue;
    auto journal = std::make_unique<Journal>(entry.path().string());
    const auto& events = journal->replayed();
    if (events.empty()) continue;  // creation never became durable
    auto acct = AccountFromEvent(events.front());
    for (size_t i = 1; i < events.size(); ++i) ApplyEvent(*acct, events[i]);
    acct->journal = std::move(journal);
    accounts_[acct->id] = std::move(acct);
  }
}

LogService::~LogService() = default;

std::string LogService::AccountIdForToken(std::string_view token) {
  const Bytes32 h = TokenHash(token);
  return HexEncode(ByteSpan(h).subspan(0, 16));
}

void LogService::set_fault_hook(std::function<void(std::string_view)> hook) {
  fault_hook_ = std::move(hook);
}

void LogService::Fault(std::string_view point) {
  if (fault_hook_) fault_hook_(point);
}

uint64_t LogService::Now() const {
  if (config_.clock_ms) return config_.clock_ms();
  return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::system_clock::now().time_since_epoch())
                                   .count());
}

std::vector<AccountSummary> LogService::Accounts() const {
  std::shared_lock<std::shared_mutex> lock(accounts_mu_);
  std::vector<AccountSummary> out;
  for (const auto& [id, a] : accounts_) {
    std::lock_guard<std::mutex> alock(a->mu);
    AccountSummary s;
    s.account_id = id;
    s.records = a->records.size();
    for (const auto& b : a->batches) {
      s.consumed_presignatures += std::count(b.consumed.begin(), b.consumed.end(), true);
    }
    s.presign_batches = a->batches.size();
    s.totp_entries = a->totp.size();
    s.pw_entries = a->pw_hashes.size();
    s.journal_path = a->journal->path();
    out.push_back(s);
  }
  return out;
}

std::shared_ptr<Account> LogService::Authenticate(const HttpRequest& request) const {
  if (request.bearer.empty()) return nullptr;
  const Bytes32 h = TokenHash(request.bearer);
  std::shared_lock<std::shared_mutex> lock(accounts_mu_);
  auto it = accounts_.find(HexEncode(ByteSpan(h).subspan(0, 16)));
  if (it == accounts_.end() || !ConstantTimeEqual(it->second->token_hash, h)) return nullptr;
  return it->second;
}

void LogService::AppendRecord(Account& acct, protocol::AuthRecord rec,
                              std::optional<uint64_t> index) {
  Fault("before-append");
  rec.seq = acct.records.size();
  Commit(acct, RecordEvent(rec, index));
  Fault("after-append");
}

HttpResponse LogService::Handle(const HttpRequest& request) {
  static const std::vector<std::string> kAuthenticated = {
      "/fido2/presign", "/fido2/presign/object", "/fido2/auth", "/fido2/auth/finish",
      "/totp/register", "/totp/unregister",      "/totp/session/open", "/totp/session/msg",
      "/pw/register",   "/pw/list",              "/pw/auth",           "/audit"};
  try {
    const std::string& path = request.path;
    const bool known = path == "/enroll" || std::find(kAuthenticated.begin(),
                                                      kAuthenticated.end(),
                                                      path) != kAuthenticated.end();
    if (!known) return ErrorResponse(404, "NOT_FOUND", "unknown endpoint " + path);
    if (request.method != "POST") return ErrorResponse(405, "METHOD", "use POST");
    if (path == "/enroll") return Enroll(request);

    auto acct = Authenticate(request);
    if (!acct) return ErrorResponse(401, "UNAUTHORIZED", "missing or invalid bearer token");
    if (path == "/totp/session/msg") return TotpMessage(request);

    const Json body = wire::ParseBody(request.body.empty() ? "{}" : request.body);
    if (path == "/fido2/presign") return Fido2Presign(*acct, body);
    if (path == "/fido2/presign/object") return Fido2Object(*acct, body);
    if (path == "/fido2/auth") return Fido2Auth(*acct, request, body);
    if (path == "/fido2/auth/finish") return Fido2AuthFinish(*acct, body);
    if (path == "/totp/register") return TotpRegister(*acct, body);
    if (path == "/totp/unregister") return TotpUnregister(*acct, body);
    if (path == "/totp/session/open") return TotpOpen(acct, request, body);
    if (path == "/pw/register") return PwRegister(*acct, body);
    if (path == "/pw/list") return PwList(*acct);
    if (path == "/pw/auth") return PwAuth(*acct, request, body);
    return Audit(*acct, body);
  } catch (const HttpError& e) {
    return ErrorResponse(e.status(), e.code(), e.what());
  } catch (const ProtocolError& e) {
    const int status = e.code() == protocol::kAlreadyActive ? 409 : 403;
    return ErrorResponse(status, e.code(), e.detail());
  } catch (const ecdsa2p::EcdsaAbort& e) {
    return ErrorResponse(403, protocol::kAbort, e.what());
  } catch (const FaultInjected& e) {
    return ErrorResponse(500, "FAULT", e.what());
  } catch (const JournalError& e) {
    return ErrorResponse(500, "STORAGE", e.what());
  } catch (const std::invalid_argument& e) {
    return ErrorResponse(400, "BAD_REQUEST", e.what());
  } catch (const std::out_of_range& e) {
    return ErrorResponse(400, "BAD_REQUEST", e.what());
  } catch (const gc::GcError& e) {
    return ErrorResponse(400, "BAD_REQUEST", e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, "INTERNAL", e.what());
  }
}

HttpResponse LogService::Enroll(const HttpRequest& request) {
  if (request.bearer.size() < 16) {
    return ErrorResponse(401, "UNAUTHORIZED", "enrollment needs a bearer token of 16+ chars");
  }
  const Json body = wire::ParseBody(request.body);
  auto acct = std::make_shared<Account>();
  acct->token_hash = TokenHash(request.bearer);
  acct->id = HexEncode(ByteSpan(acct->token_hash).subspan(0, 16));
  acct->cm.digest = wire::GetArray<32>(body, "cm");
  acct->record_vk = wire::GetPoint(body, "record_vk");
  acct->pw_X = wire::GetPoint(body, "pw_X");
  if (acct->record_vk.IsIdentity() || acct->pw_X.IsIdentity()) {
    throw wire::WireError("public keys must not be the identity");
  }
  std::optional<ecdsa2p::LogPresignBatch> batch;
  if (body.contains("presign")) {
    batch = ecdsa2p::LogPresignBatch::Deserialize(wire::GetBytes(body, "presign"));
    if (batch->entries.size() > kMaxPresignBatch) throw wire::WireError("batch too large");
  }
  acct->fido2 = ecdsa2p::LogSigningKey::Generate();
  acct->pw_log = pw::LogKeys::Generate();
  RebuildPwList(*acct);

  std::unique_lock<std::shared_mutex> lock(accounts_mu_);
  const fs::path path = fs::path(config_.data_dir) / "accounts" / (acct->id + ".journal");
  if (accounts_.count(acct->id) || fs::exists(path)) {
    return ErrorResponse(409, "CONFLICT", "account already enrolled");
  }
  acct->journal = std::make_unique<Journal>(path.string());
  acct->journal->Append(AccountEvent(*acct));
  const uint64_t now = Now();
  if (batch) {
    // Enrollment-time presignatures are active immediately: the client is
    // trusted at enrollment.
    ByteWriter w;
    w.U64(batch->base_index);
    w.U64(now - std::min(now, config_.objection_window_secs * 1000));
    w.Sized(batch->Serialize());
    Commit(*acct, {EventType::kPresignBatch, w.Take()});
  }
  accounts_[acct->id] = acct;
  return JsonResponse({{"account_id", acct->id},
                       {"fido2_X", wire::B64(acct->fido2.X.Encode())},
                       {"pw_K", wire::B64(acct->pw_log.K.Encode())},
                       {"presignatures", batch ? batch->entries.size() : 0}});
}

HttpResponse LogService::Fido2Presign(Account& acct, const Json& body) {
  auto batch = ecdsa2p::LogPresignBatch::Deserialize(wire::GetBytes(body, "batch"));
  if (batch.entries.empty() || batch.entries.size() > kMaxPresignBatch) {
    throw wire::WireError("batch size out of range");
  }
  const uint64_t now = Now();
  std::lock_guard<std::mutex> lock(acct.mu);
  const uint64_t lo = batch.base_index, hi = batch.base_index + batch.entries.size();
  for (const auto& b : acct.batches) {
    const uint64_t blo = b.batch.base_index, bhi = blo + b.batch.entries.size();
    if (lo < bhi && blo < hi) {
      throw HttpError(409, "CONFLICT", "presignature indices overlap an existing batch");
    }
  }
  ByteWriter w;
  w.U64(batch.base_index);
  w.U64(now);
  w.Sized(batch.Serialize());
  Commit(acct, {EventType::kPresignBatch, w.Take()});
  const auto& s = acct.batches.back();
  const uint64_t window = config_.objection_window_secs * 1000;
  return JsonResponse({{"batch_id", s.batch_id},
                       {"count", s.batch.entries.size()},
                       {"status", BatchStatus(s, now, window)},
                       {"activates_at_ms", s.created_ms + window}});
}

HttpResponse LogService::Fido2Object(Account& acct, const Json& body) {
  const uint64_t id = wire::GetU64(body, "batch_id");
  const uint64_t now = Now();
  std::lock_guard<std::mutex> lock(acct.mu);
  for (const auto& b : acct.batches) {
    if (b.batch_id != id) continue;
    if (b.deleted) return JsonResponse({{"batch_id", id}, {"status", "DELETED"}});
    if (std::string(BatchStatus(b, now, config_.objection_window_secs * 1000)) == "ACTIVE") {
      throw ProtocolError(protocol::kAlreadyActive, "batch already activated");
    }
    ByteWriter w;
    w.U64(id);
    w.U64(now);
    Commit(acct, {EventType::kPresignObject, w.Take()});
    return JsonResponse({{"batch_id", id}, {"status", "DELETED"}});
  }
  throw ProtocolError(protocol::kRejectUnknown, "no such presignature batch");
}

HttpResponse LogService::Fido2Auth(Account& acct, const HttpRequest& request,
                                   const Json& body) {
  const fido2::AuthRequest req = wire::Fido2AuthRequestFromJson(body);
  // Verification is pure and runs outside the account lock.
  fido2::VerifyAuthRequest(acct.cm, acct.record_vk, req, config_.zk);

  const uint64_t now = Now();
  std::lock_guard<std::mutex> lock(acct.mu);
  PresignState* b = FindBatch(acct, req.index);
  if (!b) throw ProtocolError(protocol::kRejectReplay, "unknown presignature index");
  if (b->deleted) throw ProtocolError(protocol::kRejectReplay, "presignature batch was deleted");
  if (std::string(BatchStatus(*b, now, config_.objection_window_secs * 1000)) != "ACTIVE") {
    throw ProtocolError(protocol::kRejectInactive, "presignature batch still pending");
  }
  const uint64_t offset = req.index - b->batch.base_index;
  if (b->consumed[offset]) throw ProtocolError(protocol::kRejectReplay, "presignature used");
  if (b->batch.entries[offset].is_void()) {
    throw ProtocolError(protocol::kRejectReplay, "void presignature");
  }
  auto signer = std::make_unique<fido2::LogSigner>(b->batch.Share(req.index), acct.fido2.x, req);

  protocol::AuthRecord rec;
  rec.ts_ms = now;
  rec.ip = request.remote_addr;
  rec.mech = Mechanism::kFido2;
  rec.ct.assign(req.ct.begin(), req.ct.end());
  rec.sig = req.ct_sig;
  AppendRecord(acct, rec, req.index);

  const auto& ch = signer->challenge();
  Json out{{"d", wire::B64(ch.round1.d.bytes())},
           {"e", wire::B64(ch.round1.e.bytes())},
           {"v_commit", wire::B64(ch.v_commit.digest)},
           {"seq", acct.records.back().seq}};
  acct.pending[req.index] = std::move(signer);
  return JsonResponse(out);
}

HttpResponse LogService::Fido2AuthFinish(Account& acct, const Json& body) {
  const uint64_t index = wire::GetU64(body, "index");
  const Scalar v = wire::GetScalar(body, "v");
  std::unique_ptr<fido2::LogSigner> signer;
  {
    std::lock_guard<std::mutex> lock(acct.mu);
    auto it = acct.pending.find(index);
    if (it == acct.pending.end()) {
      throw ProtocolError(protocol::kRejectReplay, "no signing session for this index");
    }
    signer = std::move(it->second);
    acct.pending.erase(it);
  }
  const fido2::AuthFinishReply reply = signer->Finish(v);
  return JsonResponse({{"v", wire::B64(reply.v.bytes())},
                       {"v_nonce", wire::B64(reply.v_nonce)},
                       {"s", wire::B64(reply.s.bytes())}});
}

HttpResponse LogService::TotpRegister(Account& acct, const Json& body) {
  const auto id = wire::GetArray<16>(body, "id");
  const auto klog = wire::GetArray<32>(body, "klog");
  if (id == totp::TotpId{}) throw wire::WireError("the all-zero id is reserved");
  std::lock_guard<std::mutex> lock(acct.mu);
  for (const auto& e : acct.totp) {
    if (e.id == id) throw HttpError(409, "CONFLICT", "id already registered");
  }
  Commit(acct, {EventType::kTotpRegister, Concat({id, klog})});
  return JsonResponse({{"version", acct.totp_version},
                       {"slots", totp::PaddedSlots(acct.totp.size())}});
}

HttpResponse LogService::TotpUnregister(Account& acct, const Json& body) {
  const auto id = wire::GetArray<16>(body, "id");
  std::lock_guard<std::mutex> lock(acct.mu);
  bool present = false;
  for (const auto& e : acct.totp) present |= e.id == id;
  if (present) Commit(acct, {EventType::kTotpUnregister, Bytes(id.begin(), id.end())});
  return JsonResponse({{"removed", present},
                       {"version", acct.totp_version},
                       {"slots", totp::PaddedSlots(acct.totp.size())}});
}

HttpResponse LogService::TotpOpen(const std::shared_ptr<Account>& acct,
                                  const HttpRequest& request, const Json& body) {
  if (wire::GetString(body, "mech") != "totp") throw wire::WireError("mech must be \"totp\"");
  const uint64_t t = wire::GetU64(body, "t");
  const uint64_t n = wire::GetU64(body, "n");
  const Bytes ct_sig = wire::GetBytes(body, "ct_sig", 64);
  const uint64_t now = Now();
  if (!totp::WithinSkew(t, totp::TimeStep(now / 1000), config_.totp_skew_steps)) {
    throw ProtocolError(protocol::kRejectTime, "time step outside the allowed skew");
  }
  std::vector<totp::LogEntry> entries;
  {
    std::lock_guard<std::mutex> lock(acct->mu);
    entries = acct->totp;
  }
  if (entries.empty()) throw ProtocolError(protocol::kRejectUnknown, "no TOTP registrations");
  const size_t slots = totp::PaddedSlots(entries.size());
  if (n != slots) throw ProtocolError(protocol::kRejectStale, "slot count does not match");

  auto pending = std::make_shared<TotpPending>();
  const Bytes16 sid = crypto::RandomArray<16>();
  pending->account = acct;
  pending->session = std::make_unique<totp::LogSession>(
      slots, totp::BuildLogInput(acct->cm, entries, slots, t), sid);
  pending->ct_sig = ct_sig;
  pending->ip = request.remote_addr;
  pending->created_ms = now;
  const gc::SessionMessage ot1 = pending->session->Start();
  {
    std::lock_guard<std::mutex> lock(sessions_mu_);
    std::erase_if(sessions_, [&](const auto& kv) {
      return kv.second->created_ms + kSessionTtlMs < now;
    });
    sessions_[sid] = pending;
  }
  return JsonResponse({{"session_id", wire::B64(sid)},
                       {"n", slots},
                       {"message", wire::B64(ot1.Encode())}});
}

HttpResponse LogService::TotpMessage(const HttpRequest& request) {
  auto caller = Authenticate(request);
  const Bytes raw(request.body.begin(), request.body.end());
  gc::SessionMessage msg;
  try {
    msg = gc::SessionMessage::Decode(raw);
  } catch (const gc::GcError& e) {
    throw wire::WireError(std::string("bad session message: ") + e.what());
  }
  std::shared_ptr<TotpPending> pending;
  {
    std::lock_guard<std::mutex> lock(sessions_mu_);
    auto it = sessions_.find(msg.session_id);
    if (it != sessions_.end() && it->second->account == caller) pending = it->second;
  }
  if (!pending) throw HttpError(404, "UNKNOWN_SESSION", "no such session");

  std::lock_guard<std::mutex> lock(pending->mu);
  auto drop = [&] {
    std::lock_guard<std::mutex> slock(sessions_mu_);
    sessions_.erase(msg.session_id);
  };
  if (!pending->session) throw HttpError(404, "UNKNOWN_SESSION", "session already finished");
  try {
    if (msg.type == gc::MsgType::kOtRound2) {
      return BinaryResponse(wire::PackMessages(pending->session->OnOtRound2(msg)));
    }
    if (msg.type != gc::MsgType::kEvalLabelsBack) throw gc::GcError("unexpected message type");
    const circuit::TotpLogOutput out = pending->session->OnLabelsBack(msg);
    auto session = std::move(pending->session);
    drop();
    if (!out.valid) throw ProtocolError(protocol::kRejectUnknown, "relying party not registered");
    Account& acct = *pending->account;
    if (!protocol::VerifyRecordSignature(acct.record_vk, Mechanism::kTotp, out.ct,
                                         pending->ct_sig)) {
      throw ProtocolError(protocol::kRejectIntegrity, "ciphertext signature invalid");
    }
    protocol::AuthRecord rec;
    rec.ts_ms = Now();
    rec.ip = pending->ip;
    rec.mech = Mechanism::kTotp;
    rec.ct.assign(out.ct.begin(), out.ct.end());
    rec.sig = pending->ct_sig;
    {
      std::lock_guard<std::mutex> alock(acct.mu);
      AppendRecord(acct, rec, std::nullopt);
    }
    // The client's decode map leaves only after the record is durable.
    return BinaryResponse(wire::PackMessages({session->Release()}));
  } catch (const gc::GcError&) {
    pending->session.reset();
    drop();
    throw;
  }
}

HttpResponse LogService::PwRegister(Account& acct, const Json& body) {
  const GroupElement h = wire::GetPoint(body, "hash");
  if (h.IsIdentity()) throw wire::WireError("hash must not be the identity");
  std::lock_guard<std::mutex> lock(acct.mu);
  for (const auto& e : acct.pw_hashes) {
    if (e == h) throw HttpError(409, "CONFLICT", "hash already registered");
  }
  Commit(acct, {EventType::kPwRegister, h.ToBytes()});
  return JsonResponse({{"hk", wire::B64(pw::LogEvaluate(acct.pw_log.k, h).Encode())},
                       {"version", acct.pw_version}});
}

HttpResponse LogService::PwList(Account& acct) {
  std::lock_guard<std::mutex> lock(acct.mu);
  Json list = Json::array();
  for (const auto& e : acct.pw_padded) list.push_back(wire::B64(e.Encode()));
  return JsonResponse({{"version", acct.pw_version}, {"list", list}});
}

HttpResponse LogService::PwAuth(Account& acct, const HttpRequest& request, const Json& body) {
  const pw::AuthRequest req = pw::AuthRequest::Deserialize(wire::GetBytes(body, "request"));
  const Bytes ct_sig = wire::GetBytes(body, "ct_sig", 64);
  const auto ct = req.ct.Encode();
  if (!protocol::VerifyRecordSignature(acct.record_vk, Mechanism::kPw, ct, ct_sig)) {
    throw ProtocolError(protocol::kRejectIntegrity, "ciphertext signature invalid");
  }
  std::vector<GroupElement> list;
  uint64_t version;
  {
    std::lock_guard<std::mutex> lock(acct.mu);
    list = acct.pw_padded;
    version = acct.pw_version;
  }
  pw::VerifyAuthRequest(acct.pw_X, list, version, req);

  std::lock_guard<std::mutex> lock(acct.mu);
  if (acct.pw_version != version) {
    throw ProtocolError(protocol::kRejectStale, "registration list changed");
  }
  protocol::AuthRecord rec;
  rec.ts_ms = Now();
  rec.ip = request.remote_addr;
  rec.mech = Mechanism::kPw;
  rec.ct.assign(ct.begin(), ct.end());
  rec.sig = ct_sig;
  AppendRecord(acct, rec, std::nullopt);
  return JsonResponse({{"y", wire::B64((acct.pw_log.k * req.ct.c2).Encode())},
                       {"seq", acct.records.back().seq}});
}

HttpResponse LogService::Audit(Account& acct, const Json& body) {
  const uint64_t from = body.contains("from_seq") ? wire::GetU64(body, "from_seq") : 0;
  const uint64_t limit = body.contains("limit") ? wire::GetU64(body, "limit") : UINT64_MAX;
  const uint64_t now = Now();
  std::lock_guard<std::mutex> lock(acct.mu);
  Json records = Json::array();
  for (uint64_t i = from; i < acct.records.size() && records.size() < limit; ++i) {
    records.push_back(wire::ToJson(acct.records[i]));
  }
  Json events = Json::array();
  for (const auto& b : acct.batches) {
    events.push_back({{"kind", "presign"},
                      {"ts_ms", b.created_ms},
                      {"batch_id", b.batch_id},
                      {"count", b.batch.entries.size()},
                      {"status", BatchStatus(b, now, config_.objection_window_secs * 1000)}});
  }
  return JsonResponse({{"records", records},
                       {"events", events},
                       {"head", acct.records.size()},
                       {"totp_version", acct.totp_version},
                       {"pw_version", acct.pw_version}});
}

}  // namespace larch::log
