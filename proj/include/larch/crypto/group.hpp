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

#ifndef LARCH_CRYPTO_GROUP_HPP_
#define LARCH_CRYPTO_GROUP_HPP_

// Prime-order group arithmetic over NIST P-256.
//
// Scalars are stored as canonical 32-byte big-endian values in [0, q).
// Group elements wrap an OpenSSL EC_POINT and serialize to the 33-byte
// compressed SEC1 form; the identity serializes to 33 zero bytes.

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "larch/common/bytes.hpp"

namespace larch::crypto {

class Scalar {
 public:
  static constexpr size_t kSize = 32;

  Scalar() { be_.fill(0); }

  static Scalar FromUint(uint64_t v);
  // Reduces an arbitrary 32-byte big-endian integer mod q.
  static Scalar FromBytesReduce(ByteSpan be32);
  // Rejects encodings >= q; returns nullopt for non-canonical input.
  static std::optional<Scalar> FromCanonical(ByteSpan be32);
  // Like FromCanonical but throws std::invalid_argument.
  static Scalar Parse(ByteSpan be32);
  // Uniform in [0, q) by rejection sampling 256-bit strings.
  static Scalar Random();
  // Uniform in [1, q).
  static Scalar RandomNonZero();
  // The group order q itself is not a valid scalar; this is q - 1.
  static Scalar MinusOne();

  const Bytes32& bytes() const { return be_; }
  Bytes ToBytes() const { return Bytes(be_.begin(), be_.end()); }
  std::string ToHex() const { return HexEncode(be_); }

  bool IsZero() const;
  Scalar Inverse() const;  // throws std::domain_error on zero

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const { return be_ == o.be_; }
  bool operator!=(const Scalar& o) const { return be_ != o.be_; }

 private:
  explicit Scalar(const Bytes32& be) : be_(be) {}
  Bytes32 be_;
};

// Returns true iff the big-endian 32-byte value is < q.
bool IsBelowOrder(ByteSpan be32);
// The group order as big-endian bytes.
const Bytes32& GroupOrderBytes();

class GroupElement {
 public:
  static constexpr size_t kSize = 33;

  GroupElement();  // identity
  GroupElement(const GroupElement& o);
  GroupElement(GroupElement&& o) noexcept;
  GroupElement& operator=(const GroupElement& o);
  GroupElement& operator=(GroupElement&& o) noexcept;
  ~GroupElement();

  static GroupElement Identity() { return GroupElement(); }
  static const GroupElement& Generator();
  // g^s, using the precomputed generator table.
  static GroupElement BaseMul(const Scalar& s);
  // Validates the encoding and curve membership.
  static std::optional<GroupElement> Decode(ByteSpan compressed33);
  static GroupElement Parse(ByteSpan compressed33);  // throws
  static GroupElement Random();
  // Multi-exponentiation: sum_i scalars[i] * points[i].
  static GroupElement MultiMul(const std::vector<GroupElement>& points,
                               const std::vector<Scalar>& scalars);

  std::array<uint8_t, kSize> Encode() const;
  Bytes ToBytes() const;
  std::string ToHex() const;

  bool IsIdentity() const;
  // Affine x-coordinate as a 32-byte big-endian field element.
  Bytes32 AffineX() const;
  // Conversion function f: affine x-coordinate reduced mod q.
  Scalar ConvertToScalar() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& o) { return *this = *this + o; }
  GroupElement& operator-=(const GroupElement& o) { return *this = *this - o; }
  friend GroupElement operator*(const Scalar& s, const GroupElement& p);

  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  struct Impl;

 private:
  friend struct GroupElementAccess;
  explicit GroupElement(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

// Try-and-increment: SHA-256(input || counter) read as an x-coordinate with
// even y, incrementing the 32-bit counter until a curve point is found.
GroupElement HashToGroup(ByteSpan input);
inline GroupElement HashToGroup(std::string_view input) {
  return HashToGroup(ByteSpan(reinterpret_cast<const uint8_t*>(input.data()),
                              input.size()));
}

// Builds a point from a raw x-coordinate with the given y parity; nullopt if
// x is not on the curve.
std::optional<GroupElement> PointFromX(const Bytes32& x, bool odd_y);

struct KeyPair {
  Scalar sk;
  GroupElement pk;

  static KeyPair Generate();
};

}  // namespace larch::crypto

#endif  // LARCH_CRYPTO_GROUP_HPP_
