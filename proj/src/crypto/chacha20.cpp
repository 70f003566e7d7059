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

#include "larch/crypto/chacha20.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace larch::crypto {
namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};

void Xcrypt(ByteSpan key, ByteSpan nonce, uint32_t counter, ByteSpan in,
            uint8_t* out) {
  if (key.size() != 32) throw std::invalid_argument("ChaCha20 key must be 32 bytes");
  if (nonce.size() != 12) throw std::invalid_argument("ChaCha20 nonce must be 12 bytes");
  if (in.empty()) return;
  // OpenSSL takes a 16-byte IV: little-endian counter then the nonce.
  uint8_t iv[16];
  for (int i = 0; i < 4; ++i) iv[i] = static_cast<uint8_t>(counter >> (8 * i));
  std::copy(nonce.begin(), nonce.end(), iv + 4);
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_chacha20(), nullptr, key.data(), iv) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out, &len, in.data(), static_cast<int>(in.size())) != 1 ||
      static_cast<size_t>(len) != in.size()) {
    throw std::runtime_error("ChaCha20 failed");
  }
}

}  // namespace

Bytes ChaCha20Keystream(ByteSpan key, ByteSpan nonce, uint32_t counter,
                        size_t length) {
  Bytes zeros(length, 0);
  Bytes out(length);
  Xcrypt(key, nonce, counter, zeros, out.data());
  return out;
}

Bytes StreamEncrypt(ByteSpan key, ByteSpan nonce, ByteSpan plaintext) {
  Bytes out(plaintext.size());
  Xcrypt(key, nonce, 0, plaintext, out.data());
  return out;
}

Bytes StreamDecrypt(ByteSpan key, ByteSpan nonce, ByteSpan ciphertext) {
  return StreamEncrypt(key, nonce, ciphertext);
}

}  // namespace larch::crypto
