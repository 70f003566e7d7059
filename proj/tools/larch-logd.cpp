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

// The log daemon. Flags fall back to environment variables of the same name
// upper-snake-cased (BIND, DATA_DIR, ...); an explicit flag wins.

#include <csignal>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "larch/log/http_server.hpp"
#include "larch/log/service.hpp"

namespace {

struct HostPort {
  std::string host;
  int port = 0;
};

HostPort ParseBind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("--bind must be host:port");
  HostPort hp;
  hp.host = bind.substr(0, colon);
  hp.port = std::stoi(bind.substr(colon + 1));
  if (hp.port < 0 || hp.port > 65535) throw std::invalid_argument("port out of range");
  return hp;
}

}  // namespace

int main(int argc, char** argv) {
  std::string bind = "127.0.0.1:8470";
  std::string data_dir = "./larch-data";
  uint64_t window = 0;
  uint64_t skew = 1;
  std::string profile = "test";

  CLI::App app{"larch-logd: accountable authentication log service"};
  app.add_option("--bind", bind, "host:port to listen on")->envname("BIND");
  app.add_option("--data-dir", data_dir, "directory for account journals")->envname("DATA_DIR");
  app.add_option("--objection-window-secs", window, "delay before new presignatures activate")
      ->envname("OBJECTION_WINDOW_SECS");
  app.add_option("--totp-skew-steps", skew, "accepted TOTP clock skew in 30 s steps")
      ->envname("TOTP_SKEW_STEPS");
  app.add_option("--reps-profile", profile, "minimum proof repetitions: test or prod")
      ->envname("REPS_PROFILE")
      ->check(CLI::IsMember({"test", "prod"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  // Block termination signals before any thread starts; one thread waits.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  try {
    const HostPort hp = ParseBind(bind);
    larch::log::ServiceConfig config;
    config.data_dir = data_dir;
    config.objection_window_secs = window;
    config.totp_skew_steps = skew;
    config.zk = larch::zk::ZkParams::FromProfile(profile);
    larch::log::LogService service(config);
    larch::log::HttpServer server(service, hp.host, hp.port);
    std::cout << "listening on " << hp.host << ":" << server.port() << std::endl;

    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      server.Stop();
    });
    server.Run();
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  } catch (const std::exception& e) {
    std::cerr << "larch-logd: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
