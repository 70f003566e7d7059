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

#include "larch/protocol/pw.hpp"

#include <stdexcept>

#include "larch/crypto/hash.hpp"
#include "larch/protocol/records.hpp"

namespace larch::pw {
namespace {

Bytes ProofContext(uint8_t which, uint64_t version, const Ciphertext& ct) {
  ByteWriter w;
  w.Raw(ToBytes("larch-pw-auth-v1"));
  w.U8(which);
  w.U64(version);
  w.Raw(ct.Encode());
  return w.Take();
}

}  // namespace

std::array<uint8_t, Ciphertext::kSize> Ciphertext::Encode() const {
  std::array<uint8_t, kSize> out;
  const auto a = c1.Encode(), b = c2.Encode();
  std::copy(a.begin(), a.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + GroupElement::kSize);
  return out;
}

Ciphertext Ciphertext::Decode(ByteSpan data) {
  if (data.size() != kSize) throw std::invalid_argument("ciphertext must be 66 bytes");
  return {GroupElement::Parse(data.subspan(0, GroupElement::kSize)),
          GroupElement::Parse(data.subspan(GroupElement::kSize))};
}

GroupElement HashId(const PwId& id) {
  return crypto::HashToGroup(Concat({ToBytes("larch-pw-id"), id}));
}

ClientKeys ClientKeys::Generate() {
  const Scalar x = Scalar::RandomNonZero();
  return {x, GroupElement::BaseMul(x)};
}

LogKeys LogKeys::Generate() {
  const Scalar k = Scalar::RandomNonZero();
  return {k, GroupElement::BaseMul(k)};
}

Ciphertext Encrypt(const GroupElement& X, const GroupElement& m, const Scalar& r) {
  return {GroupElement::BaseMul(r), m + r * X};
}

GroupElement Decrypt(const Scalar& x, const Ciphertext& ct) { return ct.c2 - x * ct.c1; }

GroupElement LogEvaluate(const Scalar& k, const GroupElement& h) {
  if (h.IsIdentity()) throw std::invalid_argument("refusing to evaluate the identity");
  return k * h;
}

GroupElement RandomKeyShare() { return GroupElement::Random(); }

GroupElement PasswordFromShare(const GroupElement& k_id, const GroupElement& hk) {
  return k_id + hk;
}

GroupElement KeyShareForPassword(const GroupElement& password_point, const GroupElement& hk) {
  return password_point - hk;
}

GroupElement EncodeLegacyPassword(std::string_view password) {
  if (password.empty() || password.size() > kMaxLegacyLength) {
    throw std::invalid_argument("legacy password must be 1 to 28 bytes");
  }
  // 0x00 | length | password, zero padded | u16 counter. The leading zero
  // byte keeps the value below the field prime.
  Bytes32 x{};
  x[1] = static_cast<uint8_t>(password.size());
  std::copy(password.begin(), password.end(), x.begin() + 2);
  for (uint32_t ctr = 0; ctr < 0x10000; ++ctr) {
    x[30] = static_cast<uint8_t>(ctr >> 8);
    x[31] = static_cast<uint8_t>(ctr);
    if (auto p = crypto::PointFromX(x, false)) return *p;
  }
  throw std::runtime_error("no curve point for legacy password");
}

std::optional<std::string> DecodeLegacyPassword(const GroupElement& point) {
  if (point.IsIdentity()) return std::nullopt;
  const Bytes32 x = point.AffineX();
  const size_t len = x[1];
  if (x[0] != 0 || len == 0 || len > kMaxLegacyLength) return std::nullopt;
  for (size_t i = 2 + len; i < 30; ++i) {
    if (x[i] != 0) return std::nullopt;
  }
  return std::string(x.begin() + 2, x.begin() + 2 + len);
}

std::string RenderPassword(const GroupElement& password, bool legacy) {
  if (legacy) {
    auto s = DecodeLegacyPassword(password);
    if (!s) throw std::runtime_error("legacy password does not decode");
    return *s;
  }
  return Base64Encode(password.Encode());
}

size_t PaddedSize(size_t count) {
  size_t n = 2;
  while (n < count) n <<= 1;
  return n;
}

std::vector<GroupElement> PadList(const std::vector<GroupElement>& hashes) {
  std::vector<GroupElement> out = hashes;
  const size_t n = PaddedSize(hashes.size());
  while (out.size() < n) out.push_back(GroupElement::Random());
  return out;
}

Bytes AuthRequest::Serialize() const {
  ByteWriter w;
  w.Raw(ct.Encode());
  w.U64(list_version);
  w.Sized(pi1.Serialize());
  w.Sized(pi2.Serialize());
  return w.Take();
}

AuthRequest AuthRequest::Deserialize(ByteSpan data) {
  ByteReader r(data);
  AuthRequest req;
  req.ct = Ciphertext::Decode(r.Raw(Ciphertext::kSize));
  req.list_version = r.U64();
  req.pi1 = OneOfManyProof::Deserialize(r.Sized());
  req.pi2 = OneOfManyProof::Deserialize(r.Sized());
  r.ExpectDone();
  return req;
}

std::vector<GroupElement> ShiftedList(const std::vector<GroupElement>& list,
                                      const GroupElement& c2) {
  std::vector<GroupElement> out;
  out.reserve(list.size());
  for (const auto& e : list) out.push_back(c2 - e);
  return out;
}

ClientAuth BuildAuthRequest(const ClientKeys& keys, const PwId& id,
                            const std::vector<GroupElement>& padded_list, uint64_t version) {
  const GroupElement h = HashId(id);
  size_t idx = padded_list.size();
  for (size_t i = 0; i < padded_list.size(); ++i) {
    if (padded_list[i] == h) {
      idx = i;
      break;
    }
  }
  if (idx == padded_list.size()) throw std::invalid_argument("relying party not in log list");

  ClientAuth out;
  out.r = Scalar::RandomNonZero();
  out.request.ct = Encrypt(keys.X, h, out.r);
  out.request.list_version = version;
  const auto shifted = ShiftedList(padded_list, out.request.ct.c2);
  // shifted[idx] = X^r = c1^x.
  out.request.pi1 = ProveOneOfMany(shifted, keys.X, idx, out.r,
                                   ProofContext(1, version, out.request.ct));
  out.request.pi2 = ProveOneOfMany(shifted, out.request.ct.c1, idx, keys.x,
                                   ProofContext(2, version, out.request.ct));
  return out;
}

void VerifyAuthRequest(const GroupElement& client_X, const std::vector<GroupElement>& padded_list,
                       uint64_t current_version, const AuthRequest& request) {
  if (request.list_version != current_version) {
    throw protocol::ProtocolError(protocol::kRejectStale, "registration list changed");
  }
  const auto shifted = ShiftedList(padded_list, request.ct.c2);
  const bool ok1 = VerifyOneOfMany(request.pi1, shifted, client_X,
                                   ProofContext(1, request.list_version, request.ct));
  const bool ok2 = !request.ct.c1.IsIdentity() &&
                   VerifyOneOfMany(request.pi2, shifted, request.ct.c1,
                                   ProofContext(2, request.list_version, request.ct));
  if (!ok1 || !ok2) {
    throw protocol::ProtocolError(protocol::kRejectProof, "membership proof failed");
  }
}

GroupElement FinishAuth(const ClientKeys& keys, const GroupElement& K, const Scalar& r,
                        const GroupElement& y, const GroupElement& k_id) {
  return k_id + (y - (keys.x * r) * K);
}

}  // namespace larch::pw
