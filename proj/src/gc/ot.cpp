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

#include "larch/gc/ot.hpp"

#include "larch/crypto/hash.hpp"
#include "larch/crypto/prg.hpp"

namespace larch::gc {

namespace {

using crypto::GroupElement;
using crypto::Scalar;

constexpr uint64_t kSenderDomain = 0x6f7473ull;
constexpr uint64_t kReceiverDomain = 0x6f7472ull;

Label Pad(uint64_t index, const GroupElement& p) {
  crypto::Sha256Hasher h;
  h.Update(std::string_view("larch-ot")).UpdateU64(index).Update(p.Encode());
  const Bytes32 d = h.Final();
  Label out;
  std::copy_n(d.begin(), out.size(), out.begin());
  return out;
}

GroupElement ReadPoint(ByteReader& r) {
  auto p = GroupElement::Decode(r.Raw(GroupElement::kSize));
  if (!p || p->IsIdentity()) throw GcError("OT: invalid group element");
  return *p;
}

Scalar NonZeroScalar(crypto::StreamPrg& prg) {
  for (;;) {
    Scalar s = prg.NextScalar();
    if (!s.IsZero()) return s;
  }
}

}  // namespace

OtSender::OtSender(size_t count, const Bytes32& seed) : count_(count) {
  crypto::StreamPrg prg(seed, kSenderDomain);
  a_ = NonZeroScalar(prg);
  big_a_ = GroupElement::BaseMul(a_);
  a_big_a_ = a_ * big_a_;
}

Bytes OtSender::Round1() const {
  const auto enc = big_a_.Encode();
  return Bytes(enc.begin(), enc.end());
}

Bytes OtSender::Round3(ByteSpan round2,
                       const std::vector<std::array<Label, 2>>& messages) const {
  if (messages.size() != count_) throw GcError("OT: message count mismatch");
  try {
    ByteReader r(round2);
    ByteWriter w;
    for (size_t i = 0; i < count_; ++i) {
      const GroupElement ab = a_ * ReadPoint(r);
      w.Raw(XorLabel(messages[i][0], Pad(i, ab)));
      w.Raw(XorLabel(messages[i][1], Pad(i, ab - a_big_a_)));
    }
    r.ExpectDone();
    return w.Take();
  } catch (const std::out_of_range&) {
    throw GcError("OT: round 2 has wrong length");
  }
}

OtReceiver::OtReceiver(std::vector<uint8_t> choices, const Bytes32& seed)
    : choices_(std::move(choices)) {
  crypto::StreamPrg prg(seed, kReceiverDomain);
  b_.reserve(choices_.size());
  for (size_t i = 0; i < choices_.size(); ++i) b_.push_back(NonZeroScalar(prg));
}

Bytes OtReceiver::Round2(ByteSpan round1) {
  try {
    ByteReader r(round1);
    big_a_ = ReadPoint(r);
    r.ExpectDone();
  } catch (const std::out_of_range&) {
    throw GcError("OT: round 1 has wrong length");
  }
  ByteWriter w;
  for (size_t i = 0; i < choices_.size(); ++i) {
    GroupElement bi = GroupElement::BaseMul(b_[i]);
    if (choices_[i]) bi = bi + *big_a_;
    w.Raw(bi.Encode());
  }
  return w.Take();
}

std::vector<Label> OtReceiver::Finish(ByteSpan round3) const {
  if (!big_a_) throw GcError("OT: round 1 not processed");
  if (round3.size() != choices_.size() * 32) throw GcError("OT: round 3 has wrong length");
  std::vector<Label> out(choices_.size());
  for (size_t i = 0; i < choices_.size(); ++i) {
    Label e;
    std::copy_n(round3.data() + 32 * i + 16 * (choices_[i] & 1), 16, e.begin());
    out[i] = XorLabel(e, Pad(i, b_[i] * *big_a_));
  }
  return out;
}

}  // namespace larch::gc
