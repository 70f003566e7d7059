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

#include "larch/crypto/group.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/obj_mac.h>

#include <stdexcept>

#include "larch/crypto/hash.hpp"

namespace larch::crypto {
namespace {

struct BnDeleter {
  void operator()(BIGNUM* b) const { BN_free(b); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;

struct PointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

// Shared, read-only after construction.
struct Curve {
  EC_GROUP* group;
  BIGNUM* order;
  Bytes32 order_bytes;

  Curve() {
    group = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
    if (group == nullptr || EC_GROUP_precompute_mult(group, nullptr) != 1) {
      throw std::runtime_error("failed to initialize P-256");
    }
    order = BN_dup(EC_GROUP_get0_order(group));
    BN_bn2binpad(order, order_bytes.data(), 32);
  }
};

const Curve& P256() {
  static const Curve curve;
  return curve;
}

// Per-thread scratch; BN_CTX is not thread-safe.
struct Scratch {
  BN_CTX* ctx = BN_CTX_new();
  BIGNUM* a = BN_new();
  BIGNUM* b = BN_new();
  BIGNUM* r = BN_new();
  ~Scratch() {
    BN_free(a);
    BN_free(b);
    BN_free(r);
    BN_CTX_free(ctx);
  }
};

Scratch& Tls() {
  thread_local Scratch scratch;
  return scratch;
}

void Load(BIGNUM* dst, const Bytes32& be) {
  BN_bin2bn(be.data(), 32, dst);
}

Bytes32 Store(const BIGNUM* src) {
  Bytes32 out;
  BN_bn2binpad(src, out.data(), 32);
  return out;
}

PointPtr NewPoint() {
  PointPtr p(EC_POINT_new(P256().group));
  if (!p) throw std::bad_alloc();
  return p;
}

}  // namespace

bool IsBelowOrder(ByteSpan be32) {
  const Bytes32& q = P256().order_bytes;
  if (be32.size() != 32) return false;
  for (size_t i = 0; i < 32; ++i) {
    if (be32[i] != q[i]) return be32[i] < q[i];
  }
  return false;
}

const Bytes32& GroupOrderBytes() { return P256().order_bytes; }

Scalar Scalar::FromUint(uint64_t v) {
  Bytes32 be{};
  for (int i = 0; i < 8; ++i) be[31 - i] = static_cast<uint8_t>(v >> (8 * i));
  return Scalar(be);
}

Scalar Scalar::FromBytesReduce(ByteSpan be32) {
  if (be32.size() != 32) {
    throw std::invalid_argument("scalar encoding must be 32 bytes");
  }
  Scratch& s = Tls();
  BN_bin2bn(be32.data(), 32, s.a);
  BN_nnmod(s.r, s.a, P256().order, s.ctx);
  return Scalar(Store(s.r));
}

std::optional<Scalar> Scalar::FromCanonical(ByteSpan be32) {
  if (be32.size() != 32 || !IsBelowOrder(be32)) return std::nullopt;
  return Scalar(ToArray<32>(be32));
}

Scalar Scalar::Parse(ByteSpan be32) {
  auto s = FromCanonical(be32);
  if (!s) throw std::invalid_argument("non-canonical scalar encoding");
  return *s;
}

Scalar Scalar::Random() {
  for (;;) {
    Bytes32 buf = RandomArray<32>();
    if (IsBelowOrder(buf)) return Scalar(buf);
  }
}

Scalar Scalar::RandomNonZero() {
  for (;;) {
    Scalar s = Random();
    if (!s.IsZero()) return s;
  }
}

Scalar Scalar::MinusOne() { return Scalar() - FromUint(1); }

bool Scalar::IsZero() const {
  for (uint8_t b : be_) {
    if (b != 0) return false;
  }
  return true;
}

Scalar Scalar::Inverse() const {
  if (IsZero()) throw std::domain_error("inverse of zero scalar");
  Scratch& s = Tls();
  Load(s.a, be_);
  if (BN_mod_inverse(s.r, s.a, P256().order, s.ctx) == nullptr) {
    throw std::runtime_error("BN_mod_inverse failed");
  }
  return Scalar(Store(s.r));
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scratch& s = Tls();
  Load(s.a, be_);
  Load(s.b, o.be_);
  BN_mod_add_quick(s.r, s.a, s.b, P256().order);
  return Scalar(Store(s.r));
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scratch& s = Tls();
  Load(s.a, be_);
  Load(s.b, o.be_);
  BN_mod_sub_quick(s.r, s.a, s.b, P256().order);
  return Scalar(Store(s.r));
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scratch& s = Tls();
  Load(s.a, be_);
  Load(s.b, o.be_);
  BN_mod_mul(s.r, s.a, s.b, P256().order, s.ctx);
  return Scalar(Store(s.r));
}

Scalar Scalar::operator-() const { return Scalar() - *this; }

struct GroupElement::Impl {
  PointPtr point;
};

GroupElement::GroupElement() : impl_(std::make_unique<Impl>()) {
  impl_->point = NewPoint();
  EC_POINT_set_to_infinity(P256().group, impl_->point.get());
}

GroupElement::GroupElement(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

GroupElement::GroupElement(const GroupElement& o)
    : impl_(std::make_unique<Impl>()) {
  impl_->point.reset(EC_POINT_dup(o.impl_->point.get(), P256().group));
}

GroupElement::GroupElement(GroupElement&& o) noexcept = default;

GroupElement& GroupElement::operator=(const GroupElement& o) {
  if (this != &o) {
    if (!impl_) {
      impl_ = std::make_unique<Impl>();
      impl_->point = NewPoint();
    }
    EC_POINT_copy(impl_->point.get(), o.impl_->point.get());
  }
  return *this;
}

GroupElement& GroupElement::operator=(GroupElement&& o) noexcept = default;
GroupElement::~GroupElement() = default;

struct GroupElementAccess {
  static GroupElement Wrap(PointPtr p) {
    auto impl = std::make_unique<GroupElement::Impl>();
    impl->point = std::move(p);
    return GroupElement(std::move(impl));
  }
  static const EC_POINT* Raw(const GroupElement& e) { return e.impl_->point.get(); }
};

namespace {

const EC_POINT* Raw(const GroupElement& e) { return GroupElementAccess::Raw(e); }

}  // namespace

const GroupElement& GroupElement::Generator() {
  static const GroupElement g = [] {
    PointPtr p(EC_POINT_dup(EC_GROUP_get0_generator(P256().group), P256().group));
    return GroupElementAccess::Wrap(std::move(p));
  }();
  return g;
}

GroupElement GroupElement::BaseMul(const Scalar& s) {
  Scratch& t = Tls();
  Load(t.a, s.bytes());
  PointPtr p = NewPoint();
  if (EC_POINT_mul(P256().group, p.get(), t.a, nullptr, nullptr, t.ctx) != 1) {
    throw std::runtime_error("EC_POINT_mul failed");
  }
  return GroupElementAccess::Wrap(std::move(p));
}

std::optional<GroupElement> GroupElement::Decode(ByteSpan compressed33) {
  if (compressed33.size() != kSize) return std::nullopt;
  bool all_zero = true;
  for (uint8_t b : compressed33) all_zero &= (b == 0);
  if (all_zero) return GroupElement();
  if (compressed33[0] != 0x02 && compressed33[0] != 0x03) return std::nullopt;
  PointPtr p = NewPoint();
  if (EC_POINT_oct2point(P256().group, p.get(), compressed33.data(),
                         compressed33.size(), Tls().ctx) != 1) {
    return std::nullopt;
  }
  if (EC_POINT_is_on_curve(P256().group, p.get(), Tls().ctx) != 1) {
    return std::nullopt;
  }
  return GroupElementAccess::Wrap(std::move(p));
}

GroupElement GroupElement::Parse(ByteSpan compressed33) {
  auto e = Decode(compressed33);
  if (!e) throw std::invalid_argument("invalid group element encoding");
  return std::move(*e);
}

GroupElement GroupElement::Random() { return BaseMul(Scalar::Random()); }

GroupElement GroupElement::MultiMul(const std::vector<GroupElement>& points,
                                    const std::vector<Scalar>& scalars) {
  if (points.size() != scalars.size()) {
    throw std::invalid_argument("MultiMul: size mismatch");
  }
  if (points.empty()) return GroupElement();
  std::vector<const EC_POINT*> raw_points;
  std::vector<BnPtr> bns;
  std::vector<const BIGNUM*> raw_bns;
  raw_points.reserve(points.size());
  bns.reserve(points.size());
  raw_bns.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    raw_points.push_back(Raw(points[i]));
    bns.emplace_back(BN_bin2bn(scalars[i].bytes().data(), 32, nullptr));
    raw_bns.push_back(bns.back().get());
  }
  PointPtr out = NewPoint();
  if (EC_POINTs_mul(P256().group, out.get(), nullptr, raw_points.size(),
                    raw_points.data(), raw_bns.data(), Tls().ctx) != 1) {
    throw std::runtime_error("EC_POINTs_mul failed");
  }
  return GroupElementAccess::Wrap(std::move(out));
}

std::array<uint8_t, GroupElement::kSize> GroupElement::Encode() const {
  std::array<uint8_t, kSize> out{};
  if (IsIdentity()) return out;
  if (EC_POINT_point2oct(P256().group, impl_->point.get(),
                         POINT_CONVERSION_COMPRESSED, out.data(), out.size(),
                         Tls().ctx) != kSize) {
    throw std::runtime_error("EC_POINT_point2oct failed");
  }
  return out;
}

Bytes GroupElement::ToBytes() const { return larch::ToBytes(Encode()); }

std::string GroupElement::ToHex() const { return HexEncode(Encode()); }

bool GroupElement::IsIdentity() const {
  return EC_POINT_is_at_infinity(P256().group, impl_->point.get()) == 1;
}

Bytes32 GroupElement::AffineX() const {
  if (IsIdentity()) throw std::domain_error("identity has no affine coordinates");
  Scratch& t = Tls();
  if (EC_POINT_get_affine_coordinates(P256().group, impl_->point.get(), t.r,
                                      nullptr, t.ctx) != 1) {
    throw std::runtime_error("EC_POINT_get_affine_coordinates failed");
  }
  return Store(t.r);
}

Scalar GroupElement::ConvertToScalar() const {
  return Scalar::FromBytesReduce(AffineX());
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  PointPtr p = NewPoint();
  EC_POINT_add(P256().group, p.get(), impl_->point.get(), o.impl_->point.get(),
               Tls().ctx);
  return GroupElementAccess::Wrap(std::move(p));
}

GroupElement GroupElement::operator-() const {
  PointPtr p(EC_POINT_dup(impl_->point.get(), P256().group));
  EC_POINT_invert(P256().group, p.get(), Tls().ctx);
  return GroupElementAccess::Wrap(std::move(p));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  return *this + (-o);
}

GroupElement operator*(const Scalar& s, const GroupElement& e) {
  Scratch& t = Tls();
  Load(t.a, s.bytes());
  PointPtr p = NewPoint();
  if (EC_POINT_mul(P256().group, p.get(), nullptr, Raw(e), t.a, t.ctx) != 1) {
    throw std::runtime_error("EC_POINT_mul failed");
  }
  return GroupElementAccess::Wrap(std::move(p));
}

bool GroupElement::operator==(const GroupElement& o) const {
  return EC_POINT_cmp(P256().group, impl_->point.get(), o.impl_->point.get(),
                      Tls().ctx) == 0;
}

std::optional<GroupElement> PointFromX(const Bytes32& x, bool odd_y) {
  Scratch& t = Tls();
  Load(t.a, x);
  PointPtr p = NewPoint();
  ERR_set_mark();
  const int ok = EC_POINT_set_compressed_coordinates(P256().group, p.get(), t.a,
                                                     odd_y ? 1 : 0, t.ctx);
  ERR_pop_to_mark();
  if (ok != 1) return std::nullopt;
  return GroupElementAccess::Wrap(std::move(p));
}

GroupElement HashToGroup(ByteSpan input) {
  for (uint32_t counter = 0;; ++counter) {
    Sha256Hasher h;
    h.Update(input);
    const uint8_t ctr[4] = {static_cast<uint8_t>(counter >> 24),
                            static_cast<uint8_t>(counter >> 16),
                            static_cast<uint8_t>(counter >> 8),
                            static_cast<uint8_t>(counter)};
    h.Update(ByteSpan(ctr, 4));
    if (auto p = PointFromX(h.Final(), /*odd_y=*/false)) {
      return std::move(*p);
    }
  }
}

KeyPair KeyPair::Generate() {
  Scalar sk = Scalar::RandomNonZero();
  return KeyPair{sk, GroupElement::BaseMul(sk)};
}

}  // namespace larch::crypto
