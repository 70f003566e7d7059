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

#include "larch/client/vault.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace larch::client {

using Json = nlohmann::json;

namespace {

std::string Hex(ByteSpan b) { return HexEncode(b); }

const Json& Field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("vault missing '") + key + "'");
  return *it;
}

std::string Str(const Json& j, const char* key) {
  const Json& f = Field(j, key);
  if (!f.is_string()) throw std::invalid_argument(std::string("vault field '") + key + "'");
  return f.get<std::string>();
}

uint64_t U64(const Json& j, const char* key) {
  const Json& f = Field(j, key);
  if (!f.is_number_unsigned()) {
    throw std::invalid_argument(std::string("vault field '") + key + "'");
  }
  return f.get<uint64_t>();
}

template <size_t N>
std::array<uint8_t, N> Arr(const Json& j, const char* key) {
  return ToArray<N>(HexDecode(Str(j, key)));
}

Scalar Sc(const Json& j, const char* key) { return Scalar::Parse(HexDecode(Str(j, key))); }
GroupElement Pt(const Json& j, const char* key) {
  return GroupElement::Parse(HexDecode(Str(j, key)));
}

}  // namespace

Json VaultData::ToJson() const {
  Json batches = Json::array();
  for (const auto& b : presign) {
    Json t = Json::array();
    for (const auto& s : b.t) t.push_back(s.ToHex());
    batches.push_back({{"base", b.base_index}, {"seed", Hex(b.client_seed)}, {"t", t}});
  }
  Json f = Json::array();
  for (const auto& r : fido2) {
    f.push_back({{"name", r.name}, {"y", r.y.ToHex()}, {"pk", r.pk.ToHex()}});
  }
  Json t = Json::array();
  for (const auto& r : totp) {
    t.push_back({{"name", r.name},
                 {"id", Hex(r.id)},
                 {"kclient", Hex(r.kclient)},
                 {"active", r.active}});
  }
  Json p = Json::array();
  for (const auto& r : pw) {
    p.push_back({{"name", r.name},
                 {"id", Hex(r.id)},
                 {"k_id", r.k_id.ToHex()},
                 {"legacy", r.legacy}});
  }
  return Json{{"version", kVersion},
              {"log_url", log_url},
              {"token", token},
              {"account_id", account_id},
              {"archive",
               {{"k", Hex(archive.k)}, {"r", Hex(archive.r)}, {"cm", Hex(archive.cm.digest)}}},
              {"record_sk", record_sk.ToHex()},
              {"fido2",
               {{"X", fido2_X.ToHex()},
                {"next_index", next_index},
                {"next_base", next_base},
                {"presign", batches},
                {"rps", f}}},
              {"totp", {{"rps", t}}},
              {"pw", {{"x", pw_keys.x.ToHex()}, {"K", pw_K.ToHex()}, {"rps", p}}}};
}

VaultData VaultData::FromJson(const Json& j) {
  try {
    if (!j.is_object() || U64(j, "version") != kVersion) {
      throw std::invalid_argument("unsupported vault version");
    }
    VaultData v;
    v.log_url = Str(j, "log_url");
    v.token = Str(j, "token");
    v.account_id = Str(j, "account_id");
    const Json& a = Field(j, "archive");
    v.archive.k = Arr<32>(a, "k");
    v.archive.r = Arr<32>(a, "r");
    v.archive.cm.digest = Arr<32>(a, "cm");
    v.record_sk = Sc(j, "record_sk");

    const Json& f = Field(j, "fido2");
    v.fido2_X = Pt(f, "X");
    v.next_index = U64(f, "next_index");
    v.next_base = U64(f, "next_base");
    for (const auto& b : Field(f, "presign")) {
      ecdsa2p::ClientPresignBatch batch;
      batch.base_index = U64(b, "base");
      batch.client_seed = Arr<32>(b, "seed");
      for (const auto& s : Field(b, "t")) batch.t.push_back(Scalar::Parse(HexDecode(s.get<std::string>())));
      v.presign.push_back(std::move(batch));
    }
    for (const auto& r : Field(f, "rps")) v.fido2.push_back({Str(r, "name"), Sc(r, "y"), Pt(r, "pk")});

    for (const auto& r : Field(Field(j, "totp"), "rps")) {
      v.totp.push_back(
          {Str(r, "name"), Arr<16>(r, "id"), Arr<32>(r, "kclient"), Field(r, "active").get<bool>()});
    }
    const Json& p = Field(j, "pw");
    v.pw_keys.x = Sc(p, "x");
    v.pw_keys.X = GroupElement::BaseMul(v.pw_keys.x);
    v.pw_K = Pt(p, "K");
    for (const auto& r : Field(p, "rps")) {
      v.pw.push_back(
          {Str(r, "name"), Arr<16>(r, "id"), Pt(r, "k_id"), Field(r, "legacy").get<bool>()});
    }
    return v;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed vault: ") + e.what());
  }
}

VaultLock::VaultLock(const std::string& vault_path) {
  const std::string lock_path = vault_path + ".lock";
  fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
  if (fd_ < 0) throw std::runtime_error("cannot open " + lock_path + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw std::runtime_error("vault is locked by another process");
  }
}

VaultLock::~VaultLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

std::optional<VaultData> LoadVault(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  if (text.empty()) return std::nullopt;
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("vault is not valid JSON");
  return VaultData::FromJson(j);
}

void SaveVault(const std::string& path, const VaultData& data) {
  const std::string tmp = path + ".tmp";
  const std::string text = data.ToJson().dump(2) + "\n";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw std::runtime_error("cannot write " + tmp + ": " + std::strerror(errno));
  size_t done = 0;
  while (done < text.size()) {
    const ssize_t n = ::write(fd, text.data() + done, text.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) {
      ::close(fd);
      throw std::runtime_error("write failed: " + std::string(std::strerror(errno)));
    }
    done += static_cast<size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    throw std::runtime_error("fsync failed: " + std::string(std::strerror(errno)));
  }
  ::close(fd);
  std::filesystem::rename(tmp, path);
}

}  // namespace larch::client
