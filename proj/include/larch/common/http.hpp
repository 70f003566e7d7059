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

#ifndef LARCH_COMMON_HTTP_HPP_
#define LARCH_COMMON_HTTP_HPP_

#include <string>

namespace larch {

// Transport-neutral request/response pair. The log service consumes these
// directly; real HTTP and in-process transports both map onto them.
struct HttpRequest {
  std::string method = "POST";
  std::string path;
  std::string bearer;  // empty when no Authorization header was sent
  std::string content_type = "application/json";
  std::string body;
  std::string remote_addr = "127.0.0.1";
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;

  bool ok() const { return status >= 200 && status < 300; }
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Throws std::runtime_error when the peer is unreachable.
  virtual HttpResponse Send(const HttpRequest& request) = 0;
};

}  // namespace larch

#endif  // LARCH_COMMON_HTTP_HPP_
