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

#ifndef LARCH_LOG_JOURNAL_HPP_
#define LARCH_LOG_JOURNAL_HPP_

// Append-only event file, one per account. Each frame is
//   u32 length | u8 type | payload | 8-byte checksum
// where length covers type and payload and the checksum is the first eight
// bytes of SHA-256(type | payload). Every append is fsynced before it
// returns.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "larch/common/bytes.hpp"

namespace larch::log {

enum class EventType : uint8_t {
  kAccount = 1,
  kPresignBatch = 2,
  kPresignObject = 3,
  kRecord = 4,
  kTotpRegister = 5,
  kTotpUnregister = 6,
  kPwRegister = 7,
};

struct Event {
  EventType type{};
  Bytes payload;
  bool operator==(const Event&) const = default;
};

class JournalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes EncodeFrame(const Event& e);

// Parses a whole journal image. A damaged final frame (torn write) is
// dropped and *valid_length is set to the end of the last good frame; damage
// anywhere else throws JournalError.
std::vector<Event> ParseJournal(ByteSpan data, size_t* valid_length = nullptr);

class Journal {
 public:
  // Opens or creates the file, replays it and truncates a torn tail.
  explicit Journal(std::string path);
  ~Journal();
  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  const std::vector<Event>& replayed() const { return replayed_; }
  const std::string& path() const { return path_; }

  // Durable once this returns; throws JournalError on I/O failure.
  void Append(const Event& e);

 private:
  std::string path_;
  int fd_ = -1;
  std::vector<Event> replayed_;
};

}  // namespace larch::log

#endif  // LARCH_LOG_JOURNAL_HPP_
