// Copyright 2026 The wikiner Authors.
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

#ifndef WIKINER_CORE_CURATOR_SERVER_HPP_
#define WIKINER_CORE_CURATOR_SERVER_HPP_

#include <memory>
#include <string>

#include "core/curator.hpp"

namespace wikiner {

// HTTP JSON API over a CuratorService:
//   GET  /session            full state summary
//   GET  /session/next       current prompt or {"done": true}
//   POST /session/decision   {"category", "decision"} -> updated counts
//   POST /session/export     {"articles": [...], "count": n}
// Errors come back as {"error": message} with 400 (bad request), 404 or
// 409 (decision for a category that is not the current prompt).
class CuratorServer {
 public:
  explicit CuratorServer(CuratorService& service);
  ~CuratorServer();

  CuratorServer(const CuratorServer&) = delete;
  CuratorServer& operator=(const CuratorServer&) = delete;

  // Serves files under `dir` at "/" (the browser UI).
  void MountStatic(const std::string& dir);

  // Port 0 picks a free port. Returns the bound port.
  int Bind(const std::string& host, int port);
  void Listen();  // blocks until Stop()
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wikiner

#endif  // WIKINER_CORE_CURATOR_SERVER_HPP_
