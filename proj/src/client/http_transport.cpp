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

#include "larch/client/http_transport.hpp"

#include <stdexcept>

#include "httplib.h"

namespace larch::client {

struct HttpTransport::Impl {
  explicit Impl(const std::string& url) : client(url) {}
  httplib::Client client;
};

HttpTransport::HttpTransport(const std::string& base_url) {
  if (base_url.rfind("http://", 0) != 0) {
    throw std::invalid_argument("log URL must start with http://");
  }
  impl_ = std::make_unique<Impl>(base_url);
  if (!impl_->client.is_valid()) throw std::invalid_argument("invalid log URL " + base_url);
  impl_->client.set_connection_timeout(10);
  impl_->client.set_read_timeout(300);
  impl_->client.set_write_timeout(300);
}

HttpTransport::~HttpTransport() = default;

HttpResponse HttpTransport::Send(const HttpRequest& request) {
  httplib::Headers headers;
  if (!request.bearer.empty()) headers.emplace("Authorization", "Bearer " + request.bearer);
  auto res = request.method == "GET"
                 ? impl_->client.Get(request.path, headers)
                 : impl_->client.Post(request.path, headers, request.body, request.content_type);
  if (!res) {
    throw std::runtime_error("request to " + request.path + " failed: " +
                             httplib::to_string(res.error()));
  }
  HttpResponse out;
  out.status = res->status;
  out.content_type = res->get_header_value("Content-Type");
  out.body = res->body;
  return out;
}

}  // namespace larch::client
