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

#include "larch/log/journal.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>

#include "larch/crypto/hash.hpp"

namespace larch::log {
namespace {

constexpr size_t kChecksumSize = 8;
constexpr uint32_t kMaxFrame = 64u << 20;

std::array<uint8_t, kChecksumSize> Checksum(uint8_t type, ByteSpan payload) {
  crypto::Sha256Hasher h;
  const uint8_t t[1] = {type};
  h.Update(t).Update(payload);
  const Bytes32 d = h.Final();
  std::array<uint8_t, kChecksumSize> out;
  std::copy_n(d.begin(), kChecksumSize, out.begin());
  return out;
}

std::string Errno(const std::string& what) { return what + ": " + std::strerror(errno); }

}  // namespace

Bytes EncodeFrame(const Event& e) {
  ByteWriter w;
  w.U32(static_cast<uint32_t>(1 + e.payload.size()));
  w.U8(static_cast<uint8_t>(e.type));
  w.Raw(e.payload);
  w.Raw(Checksum(static_cast<uint8_t>(e.type), e.payload));
  return w.Take();
}

std::vector<Event> ParseJournal(ByteSpan data, size_t* valid_length) {
  std::vector<Event> events;
  size_t pos = 0;
  // Only the final frame may be damaged (a torn write); it is dropped.
  while (pos < data.size()) {
    const size_t remaining = data.size() - pos;
    if (remaining < 4) break;
    const uint32_t len = (uint32_t{data[pos]} << 24) | (uint32_t{data[pos + 1]} << 16) |
                         (uint32_t{data[pos + 2]} << 8) | uint32_t{data[pos + 3]};
    if (len < 1 || len > kMaxFrame) {
      throw JournalError("bad frame length at offset " + std::to_string(pos));
    }
    const size_t frame = 4 + size_t{len} + kChecksumSize;
    if (remaining < frame) break;
    const uint8_t type = data[pos + 4];
    const ByteSpan payload = data.subspan(pos + 5, len - 1);
    const auto sum = Checksum(type, payload);
    if (!std::equal(sum.begin(), sum.end(), data.begin() + pos + 4 + len)) {
      if (remaining == frame) break;
      throw JournalError("checksum mismatch at offset " + std::to_string(pos));
    }
    events.push_back({static_cast<EventType>(type), Bytes(payload.begin(), payload.end())});
    pos += frame;
  }
  if (valid_length) *valid_length = pos;
  return events;
}

Journal::Journal(std::string path) : path_(std::move(path)) {
  Bytes image;
  {
    std::ifstream in(path_, std::ios::binary);
    if (in) image.assign(std::istreambuf_iterator<char>(in), {});
  }
  size_t valid = 0;
  replayed_ = ParseJournal(image, &valid);
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0600);
  if (fd_ < 0) throw JournalError(Errno("open " + path_));
  if (valid != image.size()) {
    if (::ftruncate(fd_, static_cast<off_t>(valid)) != 0) {
      throw JournalError(Errno("truncate " + path_));
    }
  }
  if (::lseek(fd_, static_cast<off_t>(valid), SEEK_SET) < 0) {
    throw JournalError(Errno("seek " + path_));
  }
}

Journal::~Journal() {
  if (fd_ >= 0) ::close(fd_);
}

void Journal::Append(const Event& e) {
  const Bytes frame = EncodeFrame(e);
  size_t done = 0;
  while (done < frame.size()) {
    const ssize_t n = ::write(fd_, frame.data() + done, frame.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw JournalError(Errno("write " + path_));
    }
    done += static_cast<size_t>(n);
  }
  if (::fdatasync(fd_) != 0) throw JournalError(Errno("fsync " + path_));
}

}  // namespace larch::log
