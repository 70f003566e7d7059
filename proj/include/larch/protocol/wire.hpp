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

#ifndef LARCH_PROTOCOL_WIRE_HPP_
#define LARCH_PROTOCOL_WIRE_HPP_

// JSON bodies shared by the log service and the client. Binary fields are
// standard base64; integers are JSON numbers. See docs/wire.md.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "larch/crypto/group.hpp"
#include "larch/gc/session.hpp"
#include "larch/protocol/fido2.hpp"
#include "larch/protocol/records.hpp"

namespace larch::wire {

using Json = nlohmann::json;

// Malformed or missing field in a request or response body.
class WireError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses a body; throws WireError unless it is a JSON object.
Json ParseBody(const std::string& body);

std::string GetString(const Json& j, const char* key);
uint64_t GetU64(const Json& j, const char* key);
// expected = 0 accepts any length.
Bytes GetBytes(const Json& j, const char* key, size_t expected = 0);
template <size_t N>
std::array<uint8_t, N> GetArray(const Json& j, const char* key) {
  return ToArray<N>(GetBytes(j, key, N));
}
crypto::Scalar GetScalar(const Json& j, const char* key);
crypto::GroupElement GetPoint(const Json& j, const char* key);

std::string B64(ByteSpan data);

Json ErrorBody(std::string_view code, const std::string& reason);

Json ToJson(const fido2::AuthRequest& req);
fido2::AuthRequest Fido2AuthRequestFromJson(const Json& j);

Json ToJson(const protocol::AuthRecord& rec);
protocol::AuthRecord RecordFromJson(const Json& j);

// u32 count | per message: u32 length | encoded SessionMessage.
Bytes PackMessages(const std::vector<gc::SessionMessage>& msgs);
std::vector<gc::SessionMessage> UnpackMessages(ByteSpan data);

}  // namespace larch::wire

#endif  // LARCH_PROTOCOL_WIRE_HPP_
