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

#ifndef LARCH_CRYPTO_CHACHA20_HPP_
#define LARCH_CRYPTO_CHACHA20_HPP_

#include "larch/common/bytes.hpp"

namespace larch::crypto {

using StreamNonce = std::array<uint8_t, 12>;

// ChaCha20 (RFC 8439 block function, 32-bit counter) keystream starting at
// the given block counter.
Bytes ChaCha20Keystream(ByteSpan key, ByteSpan nonce, uint32_t counter,
                        size_t length);

// Unauthenticated stream encryption, block counter starting at 0. Key must
// be 32 bytes and nonce 12 bytes (std::invalid_argument otherwise).
Bytes StreamEncrypt(ByteSpan key, ByteSpan nonce, ByteSpan plaintext);
Bytes StreamDecrypt(ByteSpan key, ByteSpan nonce, ByteSpan ciphertext);

}  // namespace larch::crypto

#endif  // LARCH_CRYPTO_CHACHA20_HPP_
