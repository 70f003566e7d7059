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

#ifndef LARCH_CLIENT_VAULT_HPP_
#define LARCH_CLIENT_VAULT_HPP_

// Client state file: versioned JSON with hex fields. Never holds a derived
// password; a pw_id exists only in memory while it is being shown.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "larch/ecdsa2p/presign.hpp"
#include "larch/protocol/archive.hpp"
#include "larch/protocol/pw.hpp"
#include "larch/protocol/totp.hpp"

namespace larch::client {

using crypto::GroupElement;
using crypto::Scalar;

struct Fido2Rp {
  std::string name;
  Scalar y;
  GroupElement pk;
};

struct TotpRp {
  std::string name;
  totp::TotpId id{};
  Bytes32 kclient{};
  bool active = true;  // kept after unregister so audit can still name it
};

struct PwRp {
  std::string name;
  pw::PwId id{};
  GroupElement k_id;
  bool legacy = false;
};

struct VaultData {
  static constexpr int kVersion = 1;

  std::string log_url;
  std::string token;
  std::string account_id;
  protocol::ArchiveKey archive;
  Scalar record_sk;

  GroupElement fido2_X;
  std::vector<ecdsa2p::ClientPresignBatch> presign;
  uint64_t next_index = 0;  // indices below this are spent
  uint64_t next_base = 0;   // first index of the next batch
  std::vector<Fido2Rp> fido2;

  std::vector<TotpRp> totp;

  pw::ClientKeys pw_keys;
  GroupElement pw_K;
  std::vector<PwRp> pw;

  nlohmann::json ToJson() const;
  // Throws std::invalid_argument on malformed or wrong-version input.
  static VaultData FromJson(const nlohmann::json& j);
};

// Exclusive advisory lock on <path>.lock for the lifetime of the object.
// Throws std::runtime_error if another process holds it.
class VaultLock {
 public:
  explicit VaultLock(const std::string& vault_path);
  ~VaultLock();
  VaultLock(const VaultLock&) = delete;
  VaultLock& operator=(const VaultLock&) = delete;

 private:
  int fd_ = -1;
};

// Returns nullopt when the file does not exist or is empty.
std::optional<VaultData> LoadVault(const std::string& path);
// Write-temp, fsync, rename: readers see the old or the new file, never a mix.
void SaveVault(const std::string& path, const VaultData& data);

}  // namespace larch::client

#endif  // LARCH_CLIENT_VAULT_HPP_
