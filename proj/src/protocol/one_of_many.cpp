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

#include "larch/protocol/one_of_many.hpp"

#include <stdexcept>

#include "larch/crypto/hash.hpp"

namespace larch::pw {
namespace {

bool IsPowerOfTwo(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t Log2(size_t n) {
  size_t m = 0;
  while ((size_t{1} << m) < n) ++m;
  return m;
}

GroupElement Pedersen(const Scalar& m, const Scalar& r) {
  return GroupElement::MultiMul({OneOfManyG(), OneOfManyH()}, {m, r});
}

Scalar Challenge(const std::vector<GroupElement>& list, const GroupElement& base,
                 const std::vector<OneOfManyProof::Level>& levels, ByteSpan context) {
  crypto::Sha256Hasher h;
  h.Update(std::string_view("larch-pw-oom-v1")).UpdateU64(context.size()).Update(context);
  h.Update(base.Encode()).UpdateU64(list.size());
  for (const auto& e : list) h.Update(e.Encode());
  for (const auto& l : levels) {
    h.Update(l.cl.Encode()).Update(l.ca.Encode()).Update(l.cb.Encode()).Update(l.cd.Encode());
  }
  return Scalar::FromBytesReduce(h.Final());
}

}  // namespace

const GroupElement& OneOfManyG() {
  static const GroupElement g = crypto::HashToGroup("larch-pw-oom-G");
  return g;
}

const GroupElement& OneOfManyH() {
  static const GroupElement h = crypto::HashToGroup("larch-pw-oom-H");
  return h;
}

Bytes OneOfManyProof::Serialize() const {
  ByteWriter w;
  w.U8(static_cast<uint8_t>(levels.size()));
  for (const auto& l : levels) {
    w.Raw(l.cl.Encode());
    w.Raw(l.ca.Encode());
    w.Raw(l.cb.Encode());
    w.Raw(l.cd.Encode());
    w.Raw(l.f.bytes());
    w.Raw(l.za.bytes());
    w.Raw(l.zb.bytes());
  }
  w.Raw(zd.bytes());
  return w.Take();
}

OneOfManyProof OneOfManyProof::Deserialize(ByteSpan data) {
  ByteReader r(data);
  OneOfManyProof p;
  const size_t m = r.U8();
  if (m > 32) throw std::invalid_argument("too many proof levels");
  p.levels.resize(m);
  for (auto& l : p.levels) {
    l.cl = GroupElement::Parse(r.Raw(GroupElement::kSize));
    l.ca = GroupElement::Parse(r.Raw(GroupElement::kSize));
    l.cb = GroupElement::Parse(r.Raw(GroupElement::kSize));
    l.cd = GroupElement::Parse(r.Raw(GroupElement::kSize));
    l.f = Scalar::Parse(r.Raw(32));
    l.za = Scalar::Parse(r.Raw(32));
    l.zb = Scalar::Parse(r.Raw(32));
  }
  p.zd = Scalar::Parse(r.Raw(32));
  r.ExpectDone();
  return p;
}

OneOfManyProof ProveOneOfMany(const std::vector<GroupElement>& list, const GroupElement& base,
                              size_t index, const Scalar& exponent, ByteSpan context) {
  const size_t n = list.size();
  if (!IsPowerOfTwo(n)) throw std::invalid_argument("list size must be a power of two");
  if (index >= n) throw std::invalid_argument("index out of range");
  if (exponent * base != list[index]) {
    throw std::invalid_argument("list element does not match base^exponent");
  }
  const size_t m = Log2(n);

  std::vector<Scalar> bit(m), r(m), a(m), s(m), t(m), rho(m);
  OneOfManyProof proof;
  proof.levels.resize(m);
  for (size_t j = 0; j < m; ++j) {
    bit[j] = Scalar::FromUint((index >> j) & 1);
    r[j] = Scalar::Random();
    a[j] = Scalar::Random();
    s[j] = Scalar::Random();
    t[j] = Scalar::Random();
    rho[j] = Scalar::Random();
    proof.levels[j].cl = Pedersen(bit[j], r[j]);
    proof.levels[j].ca = Pedersen(a[j], s[j]);
    proof.levels[j].cb = Pedersen(bit[j] * a[j], t[j]);
  }

  // coeffs[i][k]: coefficient of x^k in prod_j f_{j, i_j}(x), where
  // f_{j,1} = bit_j x + a_j and f_{j,0} = (1 - bit_j) x - a_j.
  const Scalar one = Scalar::FromUint(1);
  std::vector<std::vector<Scalar>> coeffs(n, std::vector<Scalar>(m + 1));
  for (size_t i = 0; i < n; ++i) {
    auto& p = coeffs[i];
    p[0] = one;
    for (size_t j = 0; j < m; ++j) {
      const bool ij = (i >> j) & 1;
      const Scalar c0 = ij ? a[j] : -a[j];
      const Scalar c1 = ij ? bit[j] : one - bit[j];
      // Multiply the degree-j polynomial in place by (c1 x + c0).
      for (size_t k = j + 2; k-- > 0;) {
        const Scalar lower = k > 0 ? p[k - 1] * c1 : Scalar();
        p[k] = p[k] * c0 + lower;
      }
    }
  }
  for (size_t k = 0; k < m; ++k) {
    std::vector<GroupElement> points = list;
    std::vector<Scalar> scalars(n);
    for (size_t i = 0; i < n; ++i) scalars[i] = coeffs[i][k];
    points.push_back(base);
    scalars.push_back(rho[k]);
    proof.levels[k].cd = GroupElement::MultiMul(points, scalars);
  }

  const Scalar x = Challenge(list, base, proof.levels, context);
  Scalar xk = one;  // x^k
  Scalar rho_sum;
  for (size_t j = 0; j < m; ++j) {
    auto& l = proof.levels[j];
    l.f = bit[j] * x + a[j];
    l.za = r[j] * x + s[j];
    l.zb = r[j] * (x - l.f) + t[j];
    rho_sum += rho[j] * xk;
    xk *= x;
  }
  proof.zd = exponent * xk - rho_sum;
  return proof;
}

bool VerifyOneOfMany(const OneOfManyProof& proof, const std::vector<GroupElement>& list,
                     const GroupElement& base, ByteSpan context) {
  const size_t n = list.size();
  if (!IsPowerOfTwo(n)) return false;
  const size_t m = Log2(n);
  if (proof.levels.size() != m) return false;

  const Scalar x = Challenge(list, base, proof.levels, context);
  for (const auto& l : proof.levels) {
    // x cl + ca = Com(f; za) and (x - f) cl + cb = Com(0; zb).
    const GroupElement lhs1 = GroupElement::MultiMul({l.cl, l.ca}, {x, Scalar::FromUint(1)});
    if (lhs1 != Pedersen(l.f, l.za)) return false;
    const GroupElement lhs2 =
        GroupElement::MultiMul({l.cl, l.cb}, {x - l.f, Scalar::FromUint(1)});
    if (lhs2 != l.zb * OneOfManyH()) return false;
  }

  std::vector<GroupElement> points = list;
  std::vector<Scalar> scalars(n, Scalar::FromUint(1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const Scalar& f = proof.levels[j].f;
      scalars[i] *= ((i >> j) & 1) ? f : x - f;
    }
  }
  Scalar xk = Scalar::FromUint(1);
  for (size_t k = 0; k < m; ++k) {
    points.push_back(proof.levels[k].cd);
    scalars.push_back(-xk);
    xk *= x;
  }
  points.push_back(base);
  scalars.push_back(-proof.zd);
  return GroupElement::MultiMul(points, scalars).IsIdentity();
}

}  // namespace larch::pw
