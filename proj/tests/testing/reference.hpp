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

#ifndef LARCH_TESTS_TESTING_REFERENCE_HPP_
#define LARCH_TESTS_TESTING_REFERENCE_HPP_

// Independent reference implementations used as test oracles. Nothing here
// shares code with the library under test.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace larch::testing {

using RefBytes = std::vector<uint8_t>;

inline uint32_t RefRotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }
inline uint32_t RefRotl(uint32_t x, int n) { return (x << n) | (x >> (32 - n)); }

inline void RefSha256Compress(std::array<uint32_t, 8>& h, const uint8_t* block) {
  static constexpr uint32_t k[64] = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
  uint32_t w[64];
  for (int i = 0; i < 16; ++i) {
    w[i] = (uint32_t{block[4 * i]} << 24) | (uint32_t{block[4 * i + 1]} << 16) |
           (uint32_t{block[4 * i + 2]} << 8) | uint32_t{block[4 * i + 3]};
  }
  for (int i = 16; i < 64; ++i) {
    const uint32_t s0 = RefRotr(w[i - 15], 7) ^ RefRotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    const uint32_t s1 = RefRotr(w[i - 2], 17) ^ RefRotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }
  uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
  for (int i = 0; i < 64; ++i) {
    const uint32_t t1 = hh + (RefRotr(e, 6) ^ RefRotr(e, 11) ^ RefRotr(e, 25)) +
                        ((e & f) ^ (~e & g)) + k[i] + w[i];
    const uint32_t t2 = (RefRotr(a, 2) ^ RefRotr(a, 13) ^ RefRotr(a, 22)) +
                        ((a & b) ^ (a & c) ^ (b & c));
    hh = g; g = f; f = e; e = d + t1; d = c; c = b; b = a; a = t1 + t2;
  }
  h[0] += a; h[1] += b; h[2] += c; h[3] += d;
  h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
}

inline constexpr std::array<uint32_t, 8> kRefSha256Iv = {
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

inline RefBytes RefSha256(const RefBytes& msg) {
  RefBytes padded = msg;
  const uint64_t bit_len = uint64_t{msg.size()} * 8;
  padded.push_back(0x80);
  while (padded.size() % 64 != 56) padded.push_back(0);
  for (int i = 7; i >= 0; --i) padded.push_back(static_cast<uint8_t>(bit_len >> (8 * i)));
  std::array<uint32_t, 8> h = kRefSha256Iv;
  for (size_t off = 0; off < padded.size(); off += 64) RefSha256Compress(h, padded.data() + off);
  RefBytes out;
  for (uint32_t v : h) {
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  return out;
}

inline RefBytes RefHmacSha256(RefBytes key, const RefBytes& msg) {
  if (key.size() > 64) key = RefSha256(key);
  key.resize(64, 0);
  RefBytes inner(64), outer(64);
  for (int i = 0; i < 64; ++i) {
    inner[i] = key[i] ^ 0x36;
    outer[i] = key[i] ^ 0x5c;
  }
  inner.insert(inner.end(), msg.begin(), msg.end());
  const RefBytes ih = RefSha256(inner);
  outer.insert(outer.end(), ih.begin(), ih.end());
  return RefSha256(outer);
}

// RFC 4226 dynamic truncation of HMAC-SHA256 over an 8-byte big-endian
// counter; returns the 31-bit value before reduction.
inline uint32_t RefTotpTruncated(const RefBytes& key, uint64_t counter) {
  RefBytes msg(8);
  for (int i = 0; i < 8; ++i) msg[i] = static_cast<uint8_t>(counter >> (56 - 8 * i));
  const RefBytes mac = RefHmacSha256(key, msg);
  const int off = mac[31] & 0x0f;
  return ((uint32_t{mac[off]} & 0x7f) << 24) | (uint32_t{mac[off + 1]} << 16) |
         (uint32_t{mac[off + 2]} << 8) | uint32_t{mac[off + 3]};
}

// RFC 6238 TOTP with HMAC-SHA256.
inline uint32_t RefTotp(const RefBytes& key, uint64_t counter, int digits) {
  uint32_t mod = 1;
  for (int i = 0; i < digits; ++i) mod *= 10;
  return RefTotpTruncated(key, counter) % mod;
}

// RFC 8439 section 2.3 block function.
inline std::array<uint8_t, 64> RefChaCha20Block(const RefBytes& key, uint32_t counter,
                                                const RefBytes& nonce) {
  auto le32 = [](const uint8_t* p) {
    return uint32_t{p[0]} | (uint32_t{p[1]} << 8) | (uint32_t{p[2]} << 16) | (uint32_t{p[3]} << 24);
  };
  uint32_t st[16] = {0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
  for (int i = 0; i < 8; ++i) st[4 + i] = le32(key.data() + 4 * i);
  st[12] = counter;
  for (int i = 0; i < 3; ++i) st[13 + i] = le32(nonce.data() + 4 * i);
  uint32_t x[16];
  for (int i = 0; i < 16; ++i) x[i] = st[i];
  auto qr = [&](int a, int b, int c, int d) {
    x[a] += x[b]; x[d] ^= x[a]; x[d] = RefRotl(x[d], 16);
    x[c] += x[d]; x[b] ^= x[c]; x[b] = RefRotl(x[b], 12);
    x[a] += x[b]; x[d] ^= x[a]; x[d] = RefRotl(x[d], 8);
    x[c] += x[d]; x[b] ^= x[c]; x[b] = RefRotl(x[b], 7);
  };
  for (int i = 0; i < 10; ++i) {
    qr(0, 4, 8, 12); qr(1, 5, 9, 13); qr(2, 6, 10, 14); qr(3, 7, 11, 15);
    qr(0, 5, 10, 15); qr(1, 6, 11, 12); qr(2, 7, 8, 13); qr(3, 4, 9, 14);
  }
  std::array<uint8_t, 64> out;
  for (int i = 0; i < 16; ++i) {
    const uint32_t v = x[i] + st[i];
    for (int j = 0; j < 4; ++j) out[4 * i + j] = static_cast<uint8_t>(v >> (8 * j));
  }
  return out;
}

inline RefBytes RefChaCha20Xor(const RefBytes& key, const RefBytes& nonce, uint32_t counter,
                               const RefBytes& in) {
  RefBytes out(in.size());
  for (size_t off = 0; off < in.size(); off += 64) {
    const auto ks = RefChaCha20Block(key, counter++, nonce);
    for (size_t i = off; i < in.size() && i < off + 64; ++i) out[i] = in[i] ^ ks[i - off];
  }
  return out;
}

inline RefBytes RefHex(const std::string& hex) {
  RefBytes out;
  for (size_t i = 0; i + 1 < hex.size(); i += 2) {
    out.push_back(static_cast<uint8_t>(std::stoi(hex.substr(i, 2), nullptr, 16)));
  }
  return out;
}

}  // namespace larch::testing

#endif  // LARCH_TESTS_TESTING_REFERENCE_HPP_
