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

#ifndef LARCH_CLIENT_HTTP_TRANSPORT_HPP_
#define LARCH_CLIENT_HTTP_TRANSPORT_HPP_

#include <memory>
#include <string>

#include "larch/common/http.hpp"

namespace larch::client {

// Plain HTTP/1.1 transport for a base URL of the form http://host:port.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(const std::string& base_url);
  ~HttpTransport() override;
  HttpResponse Send(const HttpRequest& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace larch::client

#endif  // LARCH_CLIENT_HTTP_TRANSPORT_HPP_
