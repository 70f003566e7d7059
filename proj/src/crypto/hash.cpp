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

#include "larch/crypto/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <stdexcept>

namespace larch::crypto {

Bytes32 Sha256(ByteSpan data) {
  Bytes32 out;
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Bytes32 HmacSha256(ByteSpan key, ByteSpan data) {
  Bytes32 out;
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(),
           data.size(), out.data(), &len) == nullptr ||
      len != out.size()) {
    throw std::runtime_error("HMAC-SHA256 failed");
  }
  return out;
}

struct Sha256Hasher::Impl {
  SHA256_CTX ctx;
};

Sha256Hasher::Sha256Hasher() : impl_(std::make_unique<Impl>()) {
  SHA256_Init(&impl_->ctx);
}

Sha256Hasher::~Sha256Hasher() = default;

Sha256Hasher& Sha256Hasher::Update(ByteSpan data) {
  SHA256_Update(&impl_->ctx, data.data(), data.size());
  return *this;
}

Sha256Hasher& Sha256Hasher::Update(std::string_view text) {
  SHA256_Update(&impl_->ctx, text.data(), text.size());
  return *this;
}

Sha256Hasher& Sha256Hasher::UpdateU64(uint64_t v) {
  uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<uint8_t>(v >> (56 - 8 * i));
  return Update(ByteSpan(buf, 8));
}

Bytes32 Sha256Hasher::Final() {
  Bytes32 out;
  SHA256_Final(out.data(), &impl_->ctx);
  return out;
}

void RandomBytes(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
}

}  // namespace larch::crypto
