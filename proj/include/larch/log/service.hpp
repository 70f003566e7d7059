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

#ifndef LARCH_LOG_SERVICE_HPP_
#define LARCH_LOG_SERVICE_HPP_

// The log daemon's request handler. Every endpoint is a POST; all of them
// except /enroll authenticate the caller by bearer token. Responses are JSON
// except the binary TOTP session endpoint. Errors carry
// {"error": CODE, "reason": text}.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "larch/common/http.hpp"
#include "larch/protocol/records.hpp"
#include "larch/zk/mpcith.hpp"

namespace larch::log {

struct ServiceConfig {
  std::string data_dir;
  uint64_t objection_window_secs = 0;
  uint64_t totp_skew_steps = 1;
  zk::ZkParams zk = zk::ZkParams::Test();
  // Unix milliseconds; defaults to the system clock.
  std::function<uint64_t()> clock_ms;
};

// Thrown by the fault hook to simulate a crash at a named point.
class FaultInjected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Read-only view for tests and operators.
struct AccountSummary {
  std::string account_id;
  size_t records = 0;
  size_t consumed_presignatures = 0;
  size_t presign_batches = 0;
  size_t totp_entries = 0;
  size_t pw_entries = 0;
  std::string journal_path;
};

// Defined in service.cpp.
struct Account;
struct TotpPending;

class LogService {
 public:
  // Replays every journal under data_dir/accounts. Throws JournalError on
  // corruption other than a torn tail.
  explicit LogService(ServiceConfig config);
  ~LogService();

  HttpResponse Handle(const HttpRequest& request);

  // Called at "before-append" and "after-append" around every record append.
  // A FaultInjected thrown here fails the request with no credential
  // material released.
  void set_fault_hook(std::function<void(std::string_view)> hook);

  std::vector<AccountSummary> Accounts() const;
  const ServiceConfig& config() const { return config_; }

  static std::string AccountIdForToken(std::string_view token);

 private:
  using Json = nlohmann::json;

  uint64_t Now() const;
  std::shared_ptr<Account> Authenticate(const HttpRequest& request) const;
  void AppendRecord(Account& acct, protocol::AuthRecord rec, std::optional<uint64_t> index);
  void Fault(std::string_view point);

  HttpResponse Enroll(const HttpRequest& request);
  HttpResponse Fido2Presign(Account& acct, const Json& body);
  HttpResponse Fido2Object(Account& acct, const Json& body);
  HttpResponse Fido2Auth(Account& acct, const HttpRequest& request, const Json& body);
  HttpResponse Fido2AuthFinish(Account& acct, const Json& body);
  HttpResponse TotpRegister(Account& acct, const Json& body);
  HttpResponse TotpUnregister(Account& acct, const Json& body);
  HttpResponse TotpOpen(const std::shared_ptr<Account>& acct, const HttpRequest& request,
                        const Json& body);
  HttpResponse TotpMessage(const HttpRequest& request);
  HttpResponse PwRegister(Account& acct, const Json& body);
  HttpResponse PwList(Account& acct);
  HttpResponse PwAuth(Account& acct, const HttpRequest& request, const Json& body);
  HttpResponse Audit(Account& acct, const Json& body);

  ServiceConfig config_;
  std::function<void(std::string_view)> fault_hook_;
  mutable std::shared_mutex accounts_mu_;
  std::map<std::string, std::shared_ptr<Account>> accounts_;
  std::mutex sessions_mu_;
  std::map<Bytes16, std::shared_ptr<TotpPending>> sessions_;
};

}  // namespace larch::log

#endif  // LARCH_LOG_SERVICE_HPP_
