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

#include "larch/circuit/totp_circuit.hpp"

#include "larch/circuit/builder.hpp"

namespace larch::circuit {

namespace {

template <typename T>
void AppendBits(std::vector<uint8_t>& out, const T& bytes) {
  auto bits = BytesToBits(ByteSpan(bytes.data(), bytes.size()));
  out.insert(out.end(), bits.begin(), bits.end());
}

std::vector<Wire> Concat(std::span<const Wire> a, std::span<const Wire> b) {
  std::vector<Wire> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// HMAC-SHA256 with a 256-bit key (zero-padded to the 512-bit block) over a
// message that is a whole number of bytes.
std::vector<Wire> HmacSha256(CircuitBuilder& b, std::span<const Wire> key,
                             std::span<const Wire> message) {
  std::vector<Wire> kblock(key.begin(), key.end());
  kblock.resize(512, kZero);
  const Bytes ipad(64, 0x36), opad(64, 0x5c);
  const auto ikey = XorBits(b, kblock, ConstBits(ipad));
  const auto okey = XorBits(b, kblock, ConstBits(opad));
  const auto istate = Sha256Compress(b, Sha256InitialState(), ikey);
  const auto inner = Sha256Bits(b, message, istate, 64);
  const auto ostate = Sha256Compress(b, Sha256InitialState(), okey);
  return Sha256Bits(b, inner, ostate, 64);
}

}  // namespace

size_t TotpLogBits(const CircuitParams& p) {
  return 256 + p.totp_slots * (128 + 256) + 64;
}

BooleanCircuit BuildTotpCircuit(const CircuitParams& p) {
  p.Validate();
  const size_t n = p.totp_slots;
  CircuitBuilder b;
  const auto client = b.AddInput(kTotpClientBits);
  const auto log = b.AddInput(TotpLogBits(p));
  std::span<const Wire> cs(client), ls(log);
  const auto k = cs.subspan(0, 256);
  const auto r = cs.subspan(256, 256);
  const auto id = cs.subspan(512, 128);
  const auto kclient = cs.subspan(640, 256);
  const auto nonce = cs.subspan(896, 96);
  const auto cm = ls.subspan(0, 256);
  const auto ids = ls.subspan(256, n * 128);
  const auto klogs = ls.subspan(256 + n * 128, n * 256);
  const auto t = ls.subspan(256 + n * 384, 64);

  // Equality scan; ids are distinct, so XOR-accumulating the gated shares
  // selects the matching slot.
  std::vector<Wire> hits(n);
  std::vector<Wire> klog(256, kZero);
  for (size_t j = 0; j < n; ++j) {
    hits[j] = EqualBits(b, ids.subspan(j * 128, 128), id);
    const auto slot = klogs.subspan(j * 256, 256);
    for (size_t i = 0; i < 256; ++i) klog[i] = b.Xor(klog[i], b.And(hits[j], slot[i]));
  }
  const Wire found = OrAll(b, hits);
  const auto kid = XorBits(b, kclient, klog);

  const auto mac = HmacSha256(b, kid, t);
  // Dynamic truncation: offset is the low nibble of the last byte.
  std::vector<std::vector<Wire>> cands(16);
  for (size_t o = 0; o < 16; ++o) {
    cands[o].assign(mac.begin() + static_cast<ptrdiff_t>(8 * o + 1),
                    mac.begin() + static_cast<ptrdiff_t>(8 * o + 32));
  }
  for (size_t level = 0; level < 4; ++level) {
    const Wire s = mac[255 - level];
    std::vector<std::vector<Wire>> next;
    for (size_t i = 0; i < cands.size(); i += 2) {
      std::vector<Wire> m(31);
      for (size_t bit = 0; bit < 31; ++bit) m[bit] = b.Mux(s, cands[i][bit], cands[i + 1][bit]);
      next.push_back(std::move(m));
    }
    cands = std::move(next);
  }

  const auto stream = ChaCha20Block(b, k, 0, nonce);
  const auto body = XorBits(b, std::span<const Wire>(stream).subspan(0, 128), id);
  const Wire cm_ok = EqualBits(b, Sha256Bits(b, Concat(k, r)), cm);

  b.AddOutput(cands[0]);
  auto log_out = Concat(nonce, body);
  log_out.push_back(b.And(found, cm_ok));
  b.AddOutput(log_out);
  return b.Build();
}

std::vector<uint8_t> TotpClientBits(const TotpClientInput& in) {
  std::vector<uint8_t> out;
  out.reserve(kTotpClientBits);
  AppendBits(out, in.k);
  AppendBits(out, in.r);
  AppendBits(out, in.id);
  AppendBits(out, in.kclient);
  AppendBits(out, in.nonce);
  return out;
}

std::vector<uint8_t> TotpLogBits(const TotpLogInput& in, const CircuitParams& p) {
  if (in.ids.size() != p.totp_slots || in.klogs.size() != p.totp_slots) {
    throw std::invalid_argument("TotpLogBits: slot count mismatch");
  }
  std::vector<uint8_t> out;
  out.reserve(TotpLogBits(p));
  AppendBits(out, in.cm);
  for (const auto& id : in.ids) AppendBits(out, id);
  for (const auto& kl : in.klogs) AppendBits(out, kl);
  auto tb = UintToBits(in.t, 64);
  out.insert(out.end(), tb.begin(), tb.end());
  return out;
}

uint32_t DecodeTotpCode(std::span<const uint8_t> bits) {
  if (bits.size() != CircuitParams::kTotpCodeBits) {
    throw std::invalid_argument("DecodeTotpCode: expected 31 bits");
  }
  return static_cast<uint32_t>(BitsToUint(bits));
}

TotpLogOutput DecodeTotpLogOutput(std::span<const uint8_t> bits) {
  if (bits.size() != kTotpLogOutputBits) {
    throw std::invalid_argument("DecodeTotpLogOutput: bad width");
  }
  TotpLogOutput out;
  const Bytes ct = BitsToBytes(bits.subspan(0, 224));
  std::copy(ct.begin(), ct.end(), out.ct.begin());
  out.valid = bits[224] & 1;
  return out;
}

}  // namespace larch::circuit
