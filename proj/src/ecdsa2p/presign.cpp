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

#include "larch/ecdsa2p/presign.hpp"

#include <stdexcept>

#include "larch/crypto/hash.hpp"
#include "larch/crypto/prg.hpp"

namespace larch::ecdsa2p {

namespace {

using crypto::GroupElement;

constexpr size_t kLogPrgCount = 4;      // r0, alpha0, a0, b0
constexpr size_t kClientPrgCount = 9;   // r1, rhat1, alpha1, a1, b1, c1, f1, g1, h1
constexpr uint32_t kMaxBatch = 1u << 20;

Bytes32 DeriveSeed(const Bytes32& master, std::string_view label) {
  crypto::Sha256Hasher h;
  return h.Update(label).Update(master).Final();
}

struct LogPrg {
  Scalar r, alpha, a, b;
};

LogPrg ExpandLog(const Bytes32& seed, uint64_t index) {
  const auto v = crypto::PrgExpand(seed, index, kLogPrgCount);
  return {v[0], v[1], v[2], v[3]};
}

PresigShare ExpandClient(const Bytes32& seed, uint64_t index, const Scalar& t) {
  const auto v = crypto::PrgExpand(seed, index, kClientPrgCount);
  PresigShare s;
  s.t = t;
  s.r = v[0];
  s.rhat = v[1];
  s.alpha = v[2];
  s.a = v[3];
  s.b = v[4];
  s.c = v[5];
  s.f = v[6];
  s.g = v[7];
  s.h = v[8];
  return s;
}

}  // namespace

std::array<uint8_t, LogPresigEntry::kSize> LogPresigEntry::Encode() const {
  std::array<uint8_t, kSize> out;
  const Scalar* fields[] = {&t, &rhat, &c, &f, &g, &h};
  for (size_t i = 0; i < 6; ++i) {
    std::copy(fields[i]->bytes().begin(), fields[i]->bytes().end(), out.begin() + 32 * i);
  }
  return out;
}

LogPresigEntry LogPresigEntry::Decode(ByteSpan data) {
  if (data.size() != kSize) throw std::invalid_argument("presignature entry must be 192 bytes");
  LogPresigEntry e;
  Scalar* fields[] = {&e.t, &e.rhat, &e.c, &e.f, &e.g, &e.h};
  for (size_t i = 0; i < 6; ++i) *fields[i] = Scalar::Parse(data.subspan(32 * i, 32));
  return e;
}

Bytes LogPresignBatch::Serialize() const {
  ByteWriter w;
  w.U8(kVersion);
  w.U32(static_cast<uint32_t>(entries.size()));
  w.U64(base_index);
  w.Raw(log_seed);
  for (const auto& e : entries) w.Raw(e.Encode());
  return w.Take();
}

LogPresignBatch LogPresignBatch::Deserialize(ByteSpan data) {
  ByteReader r(data);
  if (r.U8() != kVersion) throw std::invalid_argument("unsupported presignature batch version");
  const uint32_t count = r.U32();
  if (count == 0 || count > kMaxBatch) throw std::invalid_argument("bad presignature count");
  LogPresignBatch b;
  b.base_index = r.U64();
  if (b.base_index > UINT64_MAX - count) throw std::invalid_argument("index range overflows");
  b.log_seed = r.Fixed<32>();
  if (r.remaining() != static_cast<size_t>(count) * LogPresigEntry::kSize) {
    throw std::invalid_argument("presignature batch length mismatch");
  }
  b.entries.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    b.entries.push_back(LogPresigEntry::Decode(r.Raw(LogPresigEntry::kSize)));
  }
  return b;
}

bool LogPresignBatch::Contains(uint64_t index) const {
  return index >= base_index && index - base_index < entries.size();
}

PresigShare LogPresignBatch::Share(uint64_t index) const {
  if (!Contains(index)) throw std::out_of_range("presignature index outside batch");
  const LogPresigEntry& e = entries[index - base_index];
  if (e.is_void()) throw std::invalid_argument("presignature index is void");
  const LogPrg p = ExpandLog(log_seed, index);
  return PresigShare{e.t, p.r, e.rhat, p.alpha, p.a, p.b, e.c, e.f, e.g, e.h};
}

bool ClientPresignBatch::Contains(uint64_t index) const {
  return index >= base_index && index - base_index < t.size();
}

bool ClientPresignBatch::IsVoid(uint64_t index) const {
  return !Contains(index) || t[index - base_index].IsZero();
}

PresigShare ClientPresignBatch::Share(uint64_t index) const {
  if (!Contains(index)) throw std::out_of_range("presignature index outside batch");
  if (IsVoid(index)) throw std::invalid_argument("presignature index is void");
  return ExpandClient(client_seed, index, t[index - base_index]);
}

PresignOutput PresignBatch(size_t count, const Bytes32& master_seed, uint64_t base_index) {
  if (count == 0 || count > kMaxBatch) throw std::invalid_argument("bad presignature count");
  PresignOutput out;
  out.log.base_index = out.client.base_index = base_index;
  out.log.log_seed = DeriveSeed(master_seed, "larch-presign-log");
  out.client.client_seed = DeriveSeed(master_seed, "larch-presign-client");
  out.log.entries.reserve(count);
  out.client.t.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const uint64_t index = base_index + i;
    const LogPrg lp = ExpandLog(out.log.log_seed, index);
    const PresigShare cs = ExpandClient(out.client.client_seed, index, Scalar());
    const Scalar rinv = lp.r + cs.r;
    LogPresigEntry e;  // void unless filled in below
    if (!rinv.IsZero()) {
      const Scalar t = GroupElement::BaseMul(rinv.Inverse()).ConvertToScalar();
      if (!t.IsZero()) {
        const Scalar alpha = lp.alpha + cs.alpha;
        const Scalar a = lp.a + cs.a;
        const Scalar b = lp.b + cs.b;
        const Scalar c = a * b;
        e.t = t;
        e.rhat = alpha * rinv - cs.rhat;
        e.c = c - cs.c;
        e.f = alpha * a - cs.f;
        e.g = alpha * b - cs.g;
        e.h = alpha * c - cs.h;
      }
    }
    out.client.t.push_back(e.t);
    out.log.entries.push_back(e);
  }
  return out;
}

}  // namespace larch::ecdsa2p
