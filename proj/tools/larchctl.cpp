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

// Operator CLI over the client library. Exit codes: 0 success, 1 protocol or
// transport failure, 2 audit flagged something, 64 usage error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "larch/client/client.hpp"
#include "larch/client/http_transport.hpp"
#include "larch/client/vault.hpp"
#include "larch/crypto/ecdsa.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/protocol/fido2.hpp"
#include "larch/protocol/totp.hpp"

namespace {

using larch::client::Client;
using larch::client::ClientError;
using larch::client::VaultData;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitFlagged = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string EnvOr(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string FormatTime(uint64_t ts_ms) {
  const std::time_t secs = static_cast<std::time_t>(ts_ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << "." << std::setw(3) << std::setfill('0')
      << ts_ms % 1000 << "Z";
  return out.str();
}

larch::Bytes32 ParseHex32(const std::string& hex, const char* what) {
  larch::Bytes b;
  try {
    b = larch::HexDecode(hex);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " is not hex");
  }
  if (b.size() != 32) throw UsageError(std::string(what) + " must be 32 bytes");
  return larch::ToArray<32>(b);
}

struct Options {
  std::string vault_path;
  std::string log_url;
  // register / auth
  std::string mech;
  std::string rp;
  std::string totp_key;
  std::optional<std::string> import_pw;
  std::string challenge;
  std::optional<uint64_t> time;
  // enroll / presign
  size_t presignatures = 128;
  uint64_t batch_id = 0;
  // audit
  bool json = false;
  // verify-sig
  std::string pk;
  std::string sig;
};

// Holds the vault lock for the whole command; saves after every mutation.
class Session {
 public:
  explicit Session(const Options& o) : path_(o.vault_path), lock_(Require(o.vault_path)) {
    auto v = larch::client::LoadVault(path_);
    if (!v) throw ClientError("NOT_ENROLLED", "no vault at " + path_);
    vault_ = std::move(*v);
    const std::string url = o.log_url.empty() ? vault_.log_url : o.log_url;
    transport_ = std::make_unique<larch::client::HttpTransport>(url);
    client_ = std::make_unique<Client>(*transport_, vault_, larch::zk::ZkParams::Test(),
                                       [this](const VaultData& d) {
                                         larch::client::SaveVault(path_, d);
                                       });
  }
  Client& client() { return *client_; }

 private:
  static const std::string& Require(const std::string& path) {
    if (path.empty()) throw UsageError("--vault or LARCH_VAULT is required");
    return path;
  }
  std::string path_;
  larch::client::VaultLock lock_;
  VaultData vault_;
  std::unique_ptr<larch::client::HttpTransport> transport_;
  std::unique_ptr<Client> client_;
};

int Enroll(const Options& o) {
  if (o.vault_path.empty()) throw UsageError("--vault or LARCH_VAULT is required");
  if (o.log_url.empty()) throw UsageError("--log-url or LARCH_LOG_URL is required");
  larch::client::VaultLock lock(o.vault_path);
  if (larch::client::LoadVault(o.vault_path)) {
    std::cerr << "error: vault already exists at " << o.vault_path << "\n";
    return kExitFailure;
  }
  larch::client::HttpTransport transport(o.log_url);
  const VaultData v = Client::Enroll(transport, o.log_url, {o.presignatures});
  larch::client::SaveVault(o.vault_path, v);
  std::cout << "enrolled account " << v.account_id << "\n";
  return kExitOk;
}

int Register(const Options& o) {
  if (o.mech == "totp" && o.totp_key.empty()) throw UsageError("totp requires --totp-key");
  if (o.mech != "pw" && o.import_pw) throw UsageError("--import-pw applies to pw only");
  Session s(o);
  if (o.mech == "fido2") {
    std::cout << s.client().Fido2Register(o.rp).ToHex() << "\n";
  } else if (o.mech == "totp") {
    larch::Bytes key;
    try {
      key = larch::HexDecode(o.totp_key);
    } catch (const std::exception&) {
      throw UsageError("--totp-key is not hex");
    }
    if (key.empty() || key.size() > 32) throw UsageError("--totp-key must be 1 to 32 bytes");
    s.client().TotpRegister(o.rp, key);
    std::cout << "registered totp for " << o.rp << "\n";
  } else if (o.import_pw) {
    std::cout << s.client().PwImport(o.rp, *o.import_pw) << "\n";
  } else {
    std::cout << s.client().PwRegister(o.rp) << "\n";
  }
  return kExitOk;
}

int Auth(const Options& o) {
  Session s(o);
  if (o.mech == "fido2") {
    larch::Bytes32 chal;
    if (o.challenge.empty()) {
      chal = larch::crypto::RandomArray<32>();
      std::cerr << "challenge " << larch::HexEncode(chal) << "\n";
    } else {
      chal = ParseHex32(o.challenge, "--challenge");
    }
    const auto sig = s.client().Fido2Auth(o.rp, chal);
    std::cout << larch::HexEncode(sig.Encode()) << "\n";
  } else if (o.mech == "totp") {
    const uint64_t now = o.time ? *o.time
                                : static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::seconds>(
                                      std::chrono::system_clock::now().time_since_epoch())
                                                            .count());
    std::cout << s.client().TotpAuth(o.rp, larch::totp::TimeStep(now)) << "\n";
  } else {
    std::cout << s.client().PwAuth(o.rp) << "\n";
  }
  return kExitOk;
}

int Unregister(const Options& o) {
  if (o.mech != "totp") throw UsageError("only totp registrations can be removed");
  Session s(o);
  s.client().TotpUnregister(o.rp);
  std::cout << "unregistered totp for " << o.rp << "\n";
  return kExitOk;
}

int Presign(const Options& o) {
  Session s(o);
  const uint64_t id = s.client().Fido2Replenish(o.presignatures);
  std::cout << "batch " << id << "\n";
  return kExitOk;
}

int Object(const Options& o) {
  Session s(o);
  s.client().Fido2Object(o.batch_id);
  std::cout << "objected to batch " << o.batch_id << "\n";
  return kExitOk;
}

int Audit(const Options& o) {
  Session s(o);
  const auto report = s.client().Audit();
  if (o.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : report.entries) {
      nlohmann::json row{{"seq", e.seq},
                         {"ts_ms", e.ts_ms},
                         {"time", FormatTime(e.ts_ms)},
                         {"mech", larch::protocol::MechanismName(e.mech)},
                         {"rp", e.rp},
                         {"flagged", e.flagged}};
      if (e.flagged) row["reason"] = e.reason;
      rows.push_back(row);
    }
    nlohmann::json events = nlohmann::json::array();
    for (const auto& ev : report.presign_events) {
      events.push_back({{"ts_ms", ev.ts_ms},
                        {"batch_id", ev.batch_id},
                        {"count", ev.count},
                        {"status", ev.status},
                        {"expected", ev.expected}});
    }
    std::cout << nlohmann::json{{"records", rows}, {"presign_events", events}}.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(6) << "SEQ" << std::setw(26) << "TIME" << std::setw(7)
              << "MECH"
              << "RP\n";
    for (const auto& e : report.entries) {
      std::cout << std::setw(6) << e.seq << std::setw(26) << FormatTime(e.ts_ms) << std::setw(7)
                << larch::protocol::MechanismName(e.mech)
                << (e.flagged ? "FLAGGED (" + e.reason + ")" : e.rp) << "\n";
    }
    for (const auto& ev : report.presign_events) {
      if (ev.expected) continue;
      std::cout << "FLAGGED presignature batch " << ev.batch_id << " (" << ev.count << ", "
                << ev.status << ") was not requested by this vault\n";
    }
  }
  return report.any_flagged() ? kExitFlagged : kExitOk;
}

int VerifySig(const Options& o) {
  const auto pk = larch::crypto::GroupElement::Decode(larch::HexDecode(o.pk));
  if (!pk) throw UsageError("--pk is not a compressed point");
  const larch::Bytes sig = larch::HexDecode(o.sig);
  const larch::Bytes32 chal = ParseHex32(o.challenge, "--challenge");
  const bool ok =
      larch::crypto::EcdsaVerify(*pk, larch::fido2::SignedMessage(o.rp, chal), sig);
  std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.vault_path = EnvOr("LARCH_VAULT", "");
  o.log_url = EnvOr("LARCH_LOG_URL", "");

  CLI::App app{"larchctl: accountable authentication client"};
  app.require_subcommand(1);
  app.add_option("--vault", o.vault_path, "vault file (env LARCH_VAULT)");
  app.add_option("--log-url", o.log_url, "log service URL (env LARCH_LOG_URL)");
  const auto mechs = CLI::IsMember({"fido2", "totp", "pw"});

  auto* enroll = app.add_subcommand("enroll", "create a vault and an account at the log");
  enroll->add_option("--log-url", o.log_url, "log service URL");
  enroll->add_option("--vault", o.vault_path, "vault file");
  enroll->add_option("--presignatures", o.presignatures, "initial presignature count");

  auto* reg = app.add_subcommand("register", "register a relying party");
  reg->add_option("--mech", o.mech)->required()->check(mechs);
  reg->add_option("--rp", o.rp)->required();
  reg->add_option("--totp-key", o.totp_key, "hex TOTP secret");
  reg->add_option("--import-pw", o.import_pw, "existing password to import");
  reg->add_option("--vault", o.vault_path);
  reg->add_option("--log-url", o.log_url);

  auto* auth = app.add_subcommand("auth", "authenticate to a relying party");
  auth->add_option("--mech", o.mech)->required()->check(mechs);
  auth->add_option("--rp", o.rp)->required();
  auth->add_option("--challenge", o.challenge, "hex 32-byte FIDO2 challenge");
  auth->add_option("--time", o.time, "unix seconds for TOTP");
  auth->add_option("--vault", o.vault_path);
  auth->add_option("--log-url", o.log_url);

  auto* unreg = app.add_subcommand("unregister", "remove a TOTP registration");
  unreg->add_option("--mech", o.mech)->required()->check(mechs);
  unreg->add_option("--rp", o.rp)->required();
  unreg->add_option("--vault", o.vault_path);
  unreg->add_option("--log-url", o.log_url);

  auto* presign = app.add_subcommand("presign", "request a new presignature batch");
  presign->add_option("--count", o.presignatures)->required();
  presign->add_option("--vault", o.vault_path);
  presign->add_option("--log-url", o.log_url);

  auto* object = app.add_subcommand("object", "object to a pending presignature batch");
  object->add_option("--batch", o.batch_id)->required();
  object->add_option("--vault", o.vault_path);
  object->add_option("--log-url", o.log_url);

  auto* audit = app.add_subcommand("audit", "fetch and decrypt the authentication history");
  audit->add_flag("--json", o.json);
  audit->add_option("--vault", o.vault_path);
  audit->add_option("--log-url", o.log_url);

  auto* verify = app.add_subcommand("verify-sig", "check a FIDO2 signature");
  verify->add_option("--pk", o.pk)->required();
  verify->add_option("--rp", o.rp)->required();
  verify->add_option("--challenge", o.challenge)->required();
  verify->add_option("--sig", o.sig)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (enroll->parsed()) return Enroll(o);
    if (reg->parsed()) return Register(o);
    if (auth->parsed()) return Auth(o);
    if (unreg->parsed()) return Unregister(o);
    if (presign->parsed()) return Presign(o);
    if (object->parsed()) return Object(o);
    if (audit->parsed()) return Audit(o);
    if (verify->parsed()) return VerifySig(o);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ClientError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
