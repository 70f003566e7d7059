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

#ifndef LARCH_LOG_HTTP_SERVER_HPP_
#define LARCH_LOG_HTTP_SERVER_HPP_

#include <memory>
#include <string>
#include <thread>

#include "larch/common/http.hpp"
#include "larch/log/service.hpp"

namespace larch::log {

// HTTP/1.1 front end; every request is forwarded to LogService::Handle.
class HttpServer {
 public:
  // Binds immediately; port 0 picks an ephemeral port. Throws
  // std::runtime_error if the address cannot be bound.
  HttpServer(LogService& service, const std::string& host, int port);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  int port() const { return port_; }
  // Serves on a background thread until Stop().
  void Start();
  // Blocks until Stop() is called from another thread or a signal handler.
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
  std::thread thread_;
};

// Calls the service in-process. Used by tests and benchmarks.
class LoopbackTransport : public Transport {
 public:
  explicit LoopbackTransport(LogService& service) : service_(service) {}
  HttpResponse Send(const HttpRequest& request) override { return service_.Handle(request); }

 private:
  LogService& service_;
};

}  // namespace larch::log

#endif  // LARCH_LOG_HTTP_SERVER_HPP_
