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

#include "larch/log/http_server.hpp"

#include <stdexcept>

#include "httplib.h"

namespace larch::log {

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

constexpr size_t kMaxBody = 64u << 20;  // garbled tables travel the other way

std::string BearerToken(const httplib::Request& req) {
  const std::string auth = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (auth.compare(0, kPrefix.size(), kPrefix) != 0) return "";
  return auth.substr(kPrefix.size());
}

}  // namespace

HttpServer::HttpServer(LogService& service, const std::string& host, int port)
    : impl_(std::make_unique<Impl>()) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    r.bearer = BearerToken(req);
    r.content_type = req.get_header_value("Content-Type");
    r.body = req.body;
    r.remote_addr = req.remote_addr;
    const HttpResponse out = service.Handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  impl_->server.set_payload_max_length(kMaxBody);
  impl_->server.Post(R"(/.*)", handler);
  impl_->server.Get(R"(/.*)", handler);
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
  } else {
    port_ = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
}

HttpServer::~HttpServer() { Stop(); }

void HttpServer::Start() {
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::Run() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace larch::log
