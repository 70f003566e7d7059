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

#ifndef LARCH_CLIENT_CLIENT_HPP_
#define LARCH_CLIENT_CLIENT_HPP_

// Client sides of enrollment, registration, authentication and auditing
// for all three mechanisms, over an abstract transport.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "larch/common/http.hpp"
#include "larch/client/vault.hpp"
#include "larch/protocol/records.hpp"
#include "larch/protocol/wire.hpp"
#include "larch/zk/mpcith.hpp"

namespace larch::client {

// code is a log rejection code (REJECT_*), or one of TRANSPORT, UNKNOWN_RP,
// EXHAUSTED, CONFLICT, ABORT, BAD_RESPONSE.
class ClientError : public std::runtime_error {
 public:
  ClientError(std::string code, const std::string& reason)
      : std::runtime_error(code + ": " + reason), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct AuditEntry {
  uint64_t seq = 0;
  uint64_t ts_ms = 0;
  protocol::Mechanism mech = protocol::Mechanism::kFido2;
  std::string rp;       // empty when flagged
  bool flagged = false;
  std::string reason;   // why the entry is flagged
};

struct AuditEvent {
  uint64_t ts_ms = 0;
  uint64_t batch_id = 0;
  uint64_t count = 0;
  std::string status;
  bool expected = false;  // batch known to this vault
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  std::vector<AuditEvent> presign_events;
  bool any_flagged() const;
};

struct EnrollOptions {
  size_t presignatures = 128;
};

class Client {
 public:
  // `persist` runs after every vault mutation, before any network message
  // that depends on it (e.g. a spent presignature index).
  Client(Transport& transport, VaultData& vault, zk::ZkParams params = zk::ZkParams::Test(),
         std::function<void(const VaultData&)> persist = nullptr);

  // Creates fresh client secrets and the log account.
  static VaultData Enroll(Transport& transport, const std::string& log_url,
                          const EnrollOptions& options = {});

  // FIDO2. Register never talks to the log.
  GroupElement Fido2Register(const std::string& rp);
  crypto::Signature Fido2Auth(const std::string& rp, const Bytes32& chal);
  // Uploads a new batch; returns its id (first index).
  uint64_t Fido2Replenish(size_t count);
  void Fido2Object(uint64_t batch_id);
  size_t Fido2PresignaturesLeft() const;

  // TOTP. Register keeps kclient and uploads (id, klog).
  totp::TotpId TotpRegister(const std::string& rp, ByteSpan key);
  void TotpUnregister(const std::string& rp);
  // Six-digit code for time step t.
  std::string TotpAuth(const std::string& rp, uint64_t t);

  // Passwords. Register and import return the password to show once.
  std::string PwRegister(const std::string& rp);
  std::string PwImport(const std::string& rp, const std::string& password);
  std::string PwAuth(const std::string& rp);

  AuditReport Audit();

  const VaultData& vault() const { return vault_; }

 private:
  wire::Json Call(const std::string& path, const wire::Json& body);
  Bytes CallBinary(const std::string& path, ByteSpan body);
  void Persist();
  std::string PwRegisterImpl(const std::string& rp, const std::string* legacy);

  Transport& transport_;
  VaultData& vault_;
  zk::ZkParams params_;
  std::function<void(const VaultData&)> persist_;
};

// Throws ClientError(TRANSPORT) for non-2xx responses without a JSON error
// body and ClientError(code) otherwise.
void ThrowIfError(const HttpResponse& response);

}  // namespace larch::client

#endif  // LARCH_CLIENT_CLIENT_HPP_
