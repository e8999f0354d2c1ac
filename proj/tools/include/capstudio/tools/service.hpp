// Copyright 2026 The Capacity Studio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAPSTUDIO_TOOLS_SERVICE_HPP
#define CAPSTUDIO_TOOLS_SERVICE_HPP

#include <filesystem>
#include <memory>
#include <string>

#include "capstudio/tools/session.hpp"

namespace httplib {
class Server;
}

namespace capstudio::tools {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Validity tolerance applied to identified capacities before they are
  /// returned.
  double tolerance = kValidityTolerance;
  /// Directory served at "/" when non-empty.
  std::filesystem::path static_dir;
  /// Sessions are restored from and saved to this file when non-empty.
  std::filesystem::path snapshot;
};

/// Reads CAPACITY_STUDIO_PORT and CAPACITY_STUDIO_TOL over the defaults.
ServiceConfig config_from_environment(ServiceConfig base = {});

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds config.port (0 picks a free port) and returns the bound port, or
  /// -1 on failure.
  int bind();
  /// Serves until stop(); requires bind().
  bool listen();
  void stop();

  httplib::Server& server() { return *server_; }
  SessionStore& store() { return store_; }

 private:
  void routes();
  void save_snapshot();

  ServiceConfig config_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex snapshot_mutex_;
};

}  // namespace capstudio::tools

#endif  // CAPSTUDIO_TOOLS_SERVICE_HPP
