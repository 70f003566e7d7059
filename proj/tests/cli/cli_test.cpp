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

// Drives the real binaries: larch-logd on an ephemeral port and larchctl
// against it.

#include <gtest/gtest.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "larch/common/bytes.hpp"
#include "larch/crypto/hash.hpp"
#include "larch/protocol/totp.hpp"
#include "testing/harness.hpp"
#include "testing/reference.hpp"

namespace larch {
namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string Quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    // A fresh output file per start, so a restart never reads the old port.
    log_out_ = dir_.str() + "/logd" + std::to_string(starts_++) + ".out";
    port_ = 0;
    pid_ = fork();
    ASSERT_GE(pid_, 0);
    if (pid_ == 0) {
      const std::string data = dir_.str() + "/data";
      freopen(log_out_.c_str(), "w", stdout);
      execl(LARCH_LOGD_BIN, LARCH_LOGD_BIN, "--bind", "127.0.0.1:0", "--data-dir", data.c_str(),
            static_cast<char*>(nullptr));
      _exit(127);
    }
    for (int i = 0; i < 200 && port_ == 0; ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
      std::ifstream in(log_out_);
      std::string line;
      if (std::getline(in, line)) {
        const auto colon = line.rfind(':');
        if (colon != std::string::npos) port_ = std::stoi(line.substr(colon + 1));
      }
    }
    ASSERT_NE(port_, 0) << "daemon did not start";
    vault_ = dir_.str() + "/vault.json";
  }

  void TearDown() override {
    if (pid_ > 0) {
      kill(pid_, SIGTERM);
      int status = 0;
      waitpid(pid_, &status, 0);
      pid_ = -1;
      EXPECT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0) << "daemon exit " << status;
    }
  }

  RunResult Ctl(const std::string& args) {
    const std::string cmd = std::string("LARCH_LOG_URL=http://127.0.0.1:") +
                            std::to_string(port_) + " LARCH_VAULT=" + Quote(vault_) + " " +
                            LARCH_CTL_BIN + " " + args + " 2>>" + Quote(dir_.str() + "/ctl.err");
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  static std::string Trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
  }

  static std::vector<std::string> Lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
  }

  Bytes DataDirImage() {
    Bytes all;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir_.path() / "data")) {
      if (!e.is_regular_file()) continue;
      const Bytes b = testing::ReadFile(e.path().string());
      all.insert(all.end(), b.begin(), b.end());
    }
    return all;
  }

  testing::TempDir dir_;
  std::string log_out_;
  std::string vault_;
  pid_t pid_ = -1;
  int port_ = 0;
  int starts_ = 0;
};

TEST_F(CliTest, EnrollOnceAndVaultHoldsArchiveKey) {
  ASSERT_EQ(Ctl("enroll --presignatures 4").code, 0);
  const Bytes before = testing::ReadFile(vault_);
  EXPECT_NE(Ctl("enroll").code, 0);
  EXPECT_EQ(testing::ReadFile(vault_), before);

  const auto vault = nlohmann::json::parse(std::string(before.begin(), before.end()));
  const auto data = client::VaultData::FromJson(vault);
  EXPECT_TRUE(testing::Contains(before, ToBytes(HexEncode(data.archive.k))));
  EXPECT_FALSE(testing::Contains(DataDirImage(), data.archive.k));
  EXPECT_TRUE(testing::Contains(DataDirImage(), data.archive.cm.digest));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Ctl("").code, 64);
  EXPECT_EQ(Ctl("auth --mech sms --rp x").code, 64);
  ASSERT_EQ(Ctl("enroll --presignatures 1").code, 0);
  EXPECT_EQ(Ctl("register --mech totp --rp x").code, 64);
  EXPECT_EQ(Ctl("register --mech fido2").code, 64);
}

TEST_F(CliTest, RegisterAuthAndAudit) {
  ASSERT_EQ(Ctl("enroll --presignatures 8").code, 0);
  const auto empty = Ctl("audit");
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(Lines(empty.out).size(), 1u);

  const auto pk = Ctl("register --mech fido2 --rp bank.example");
  ASSERT_EQ(pk.code, 0);
  EXPECT_EQ(Trim(pk.out).size(), 66u);
  const std::string chal = HexEncode(crypto::RandomArray<32>());
  const auto sig = Ctl("auth --mech fido2 --rp bank.example --challenge " + chal);
  ASSERT_EQ(sig.code, 0);
  EXPECT_EQ(Ctl("verify-sig --pk " + Trim(pk.out) + " --rp bank.example --challenge " + chal +
                " --sig " + Trim(sig.out))
                .code,
            0);
  EXPECT_EQ(Ctl("verify-sig --pk " + Trim(pk.out) + " --rp other.example --challenge " + chal +
                " --sig " + Trim(sig.out))
                .code,
            1);

  const std::string key = "3132333435363738393031323334353637383930";
  ASSERT_EQ(Ctl("register --mech totp --rp mail.example --totp-key " + key).code, 0);
  const uint64_t now = static_cast<uint64_t>(time(nullptr));
  const auto code = Ctl("auth --mech totp --rp mail.example --time " + std::to_string(now));
  ASSERT_EQ(code.code, 0);
  char expect[8];
  std::snprintf(expect, sizeof(expect), "%06u",
                testing::RefTotp(testing::RefHex(key), totp::TimeStep(now), 6));
  EXPECT_EQ(Trim(code.out), expect);

  const auto p1 = Ctl("register --mech pw --rp shop.example");
  const auto p2 = Ctl("register --mech pw --rp shop.example");
  ASSERT_EQ(p1.code, 0);
  EXPECT_NE(Trim(p1.out), Trim(p2.out));
  // Re-registering rotates the password.
  EXPECT_EQ(Trim(Ctl("auth --mech pw --rp shop.example").out), Trim(p2.out));
  EXPECT_EQ(Trim(Ctl("register --mech pw --rp old.example --import-pw s3cret!").out), "s3cret!");
  EXPECT_EQ(Trim(Ctl("auth --mech pw --rp old.example").out), "s3cret!");
  EXPECT_FALSE(testing::Contains(testing::ReadFile(vault_), ToBytes("s3cret!")));
  EXPECT_FALSE(testing::Contains(testing::ReadFile(vault_), ToBytes(Trim(p1.out))));

  EXPECT_EQ(Ctl("auth --mech pw --rp nowhere.example").code, 1);
  EXPECT_EQ(Ctl("auth --mech fido2 --rp nowhere.example --challenge " + chal).code, 1);

  const auto table = Ctl("audit");
  EXPECT_EQ(table.code, 0);
  const auto rows = Lines(table.out);
  ASSERT_EQ(rows.size(), 5u);
  const std::vector<std::string> rps = {"bank.example", "mail.example", "shop.example",
                                        "old.example"};
  for (size_t i = 0; i < rps.size(); ++i) {
    EXPECT_NE(rows[i + 1].find(rps[i]), std::string::npos) << rows[i + 1];
  }
  const auto json = nlohmann::json::parse(Ctl("audit --json").out);
  ASSERT_EQ(json["records"].size(), rows.size() - 1);
  for (size_t i = 0; i < rps.size(); ++i) EXPECT_EQ(json["records"][i]["rp"], rps[i]);

  const Bytes image = DataDirImage();
  for (const auto& rp : rps) EXPECT_FALSE(testing::Contains(image, ToBytes(rp))) << rp;
}

TEST_F(CliTest, TamperedStoreGivesExitTwo) {
  ASSERT_EQ(Ctl("enroll --presignatures 2").code, 0);
  ASSERT_EQ(Ctl("register --mech pw --rp a").code, 0);
  ASSERT_EQ(Ctl("auth --mech pw --rp a").code, 0);
  ASSERT_EQ(Ctl("auth --mech pw --rp a").code, 0);
  TearDown();
  std::string journal;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir_.path() / "data")) {
    if (e.path().extension() == ".journal") journal = e.path().string();
  }
  ASSERT_FALSE(journal.empty());
  testing::TamperRecordAtRest(journal, 1);
  SetUp();
  const auto audit = Ctl("audit");
  EXPECT_EQ(audit.code, 2);
  EXPECT_NE(audit.out.find("FLAGGED"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(Ctl("audit --json").out)["records"][1]["flagged"], true);
}

}  // namespace
}  // namespace larch
