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

#include "larch/circuit/fido2_circuit.hpp"

#include <algorithm>

#include "larch/circuit/builder.hpp"

namespace larch::circuit {

namespace {

template <typename T>
void AppendBits(std::vector<uint8_t>& out, const T& bytes) {
  auto bits = BytesToBits(ByteSpan(bytes.data(), bytes.size()));
  out.insert(out.end(), bits.begin(), bits.end());
}

}  // namespace

BooleanCircuit BuildFido2Circuit(const CircuitParams& p) {
  p.Validate();
  CircuitBuilder b;
  const auto wit = b.AddInput(kFido2WitnessBits);
  const auto pub = b.AddInput(kFido2PublicBits);
  std::span<const Wire> ws(wit), ps(pub);
  const auto k = ws.subspan(0, 256);
  const auto r = ws.subspan(256, 256);
  const auto id = ws.subspan(512, 256);
  const auto chal = ws.subspan(768, 256);
  const auto nonce = ws.subspan(1024, 96);
  const auto cm = ps.subspan(0, 256);
  const auto ct_nonce = ps.subspan(256, 96);
  const auto ct_body = ps.subspan(352, 256);
  const auto dgst = ps.subspan(608, 256);

  std::vector<Wire> kr(k.begin(), k.end());
  kr.insert(kr.end(), r.begin(), r.end());
  const Wire cm_ok = EqualBits(b, Sha256Bits(b, kr), cm);

  const auto stream = ChaCha20Block(b, k, 0, nonce);
  const auto body = XorBits(b, std::span<const Wire>(stream).subspan(0, 256), id);
  const Wire ct_ok = b.And(EqualBits(b, body, ct_body), EqualBits(b, nonce, ct_nonce));

  std::vector<Wire> idc(id.begin(), id.end());
  idc.insert(idc.end(), chal.begin(), chal.end());
  const Wire dgst_ok = EqualBits(b, Sha256Bits(b, idc), dgst);

  const Wire ok = b.And(b.And(cm_ok, ct_ok), dgst_ok);
  b.AddOutput(std::vector<Wire>{ok});
  return b.Build();
}

std::vector<uint8_t> Fido2WitnessBits(const Fido2Witness& w) {
  std::vector<uint8_t> out;
  out.reserve(kFido2WitnessBits);
  AppendBits(out, w.k);
  AppendBits(out, w.r);
  AppendBits(out, w.id);
  AppendBits(out, w.chal);
  AppendBits(out, w.nonce);
  return out;
}

std::vector<uint8_t> Fido2PublicBits(const Fido2Public& pub) {
  std::vector<uint8_t> out;
  out.reserve(kFido2PublicBits);
  AppendBits(out, pub.cm);
  AppendBits(out, pub.ct);
  AppendBits(out, pub.dgst);
  return out;
}

Bytes32 Fido2RpId(std::string_view rp_name) {
  Bytes32 id{};
  std::copy_n(rp_name.begin(), std::min(rp_name.size(), id.size()), id.begin());
  return id;
}

}  // namespace larch::circuit
