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

#ifndef LARCH_TESTS_TESTING_HARNESS_HPP_
#define LARCH_TESTS_TESTING_HARNESS_HPP_

// Shared fixtures for service-level tests: a scratch directory, a log
// service with a controllable clock, a counting transport and an at-rest
// record tamperer.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <random>
#include <string>

#include "larch/client/client.hpp"
#include "larch/log/http_server.hpp"
#include "larch/log/journal.hpp"
#include "larch/log/service.hpp"

namespace larch::testing {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("larch-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path_.string(); }
  std::filesystem::path path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Counts every message handed to the wrapped transport.
class SpyTransport : public Transport {
 public:
  explicit SpyTransport(Transport& inner) : inner_(inner) {}
  HttpResponse Send(const HttpRequest& request) override {
    ++count_;
    return inner_.Send(request);
  }
  size_t count() const { return count_; }

 private:
  Transport& inner_;
  std::atomic<size_t> count_{0};
};

// Log service on a scratch directory with a settable clock.
class TestLog {
  class Forwarder : public Transport {
   public:
    explicit Forwarder(TestLog& owner) : owner_(owner) {}
    HttpResponse Send(const HttpRequest& request) override {
      return owner_.service_->Handle(request);
    }

   private:
    TestLog& owner_;
  };

 public:
  explicit TestLog(uint64_t objection_window_secs = 0, const std::string& dir = "")
      : dir_(dir.empty() ? tmp_.str() : dir), window_(objection_window_secs) {
    Restart();
  }

  // Replays the journals into a fresh service instance.
  // The transport outlives restarts so clients can keep their reference.
  void Restart() {
    service_.reset();
    log::ServiceConfig cfg;
    cfg.data_dir = dir_;
    cfg.objection_window_secs = window_;
    cfg.clock_ms = [this] { return now_ms_.load(); };
    service_ = std::make_unique<log::LogService>(cfg);
  }

  log::LogService& service() { return *service_; }
  Transport& transport() { return transport_; }
  const std::string& dir() const { return dir_; }
  void set_now_ms(uint64_t ms) { now_ms_ = ms; }
  uint64_t now_ms() const { return now_ms_; }
  uint64_t now_step() const { return now_ms_ / 1000 / 30; }

  std::string JournalPath() {
    auto accounts = service_->Accounts();
    return accounts.empty() ? "" : accounts.front().journal_path;
  }

 private:
  TempDir tmp_;
  std::string dir_;
  uint64_t window_;
  std::atomic<uint64_t> now_ms_{1'760'000'000'000ull};
  std::unique_ptr<log::LogService> service_;
  Forwarder transport_{*this};
};

inline Bytes ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

inline void WriteFile(const std::string& path, ByteSpan data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

// Flips one ciphertext bit of record `seq` in the journal and re-seals the
// frame checksum, as a log operator rewriting history would.
inline void TamperRecordAtRest(const std::string& journal_path, uint64_t seq) {
  auto events = log::ParseJournal(ReadFile(journal_path));
  uint64_t seen = 0;
  for (auto& e : events) {
    if (e.type != log::EventType::kRecord) continue;
    if (seen++ != seq) continue;
    // seq u64 | ts u64 | ip (u32 len + bytes) | mech u8 | ct (u32 len + bytes)
    const size_t ip_len = (size_t{e.payload[16]} << 24) | (size_t{e.payload[17]} << 16) |
                          (size_t{e.payload[18]} << 8) | e.payload[19];
    const size_t ct_start = 20 + ip_len + 1 + 4;
    e.payload.at(ct_start + 14) ^= 0x01;
  }
  Bytes image;
  for (const auto& e : events) {
    const Bytes frame = log::EncodeFrame(e);
    image.insert(image.end(), frame.begin(), frame.end());
  }
  WriteFile(journal_path, image);
}

inline bool Contains(ByteSpan hay, ByteSpan needle) {
  return !needle.empty() &&
         std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace larch::testing

#endif  // LARCH_TESTS_TESTING_HARNESS_HPP_
