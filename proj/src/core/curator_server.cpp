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

#include "core/curator_server.hpp"

#include "core/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace wikiner {

namespace {

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kState:
      return 409;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return 400;
    default:
      return 500;
  }
}

template <typename Fn>
void Respond(httplib::Response& res, Fn&& fn) {
  try {
    res.set_content(fn(), "application/json");
  } catch (const Error& e) {
    res.status = StatusFor(e.code());
    res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
  } catch (const std::exception& e) {
    res.status = 500;
    res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
  }
}

}  // namespace

struct CuratorServer::Impl {
  explicit Impl(CuratorService& s) : service(s) {}
  CuratorService& service;
  httplib::Server server;
};

CuratorServer::CuratorServer(CuratorService& service)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  CuratorService& svc = impl_->service;
  srv.Get("/session", [&svc](const httplib::Request&, httplib::Response& res) {
    Respond(res, [&] { return svc.StateJson(); });
  });
  srv.Get("/session/next", [&svc](const httplib::Request&, httplib::Response& res) {
    Respond(res, [&] { return svc.NextJson(); });
  });
  srv.Post("/session/decision", [&svc](const httplib::Request& req, httplib::Response& res) {
    Respond(res, [&] { return svc.DecideJson(req.body); });
  });
  srv.Post("/session/export", [&svc](const httplib::Request&, httplib::Response& res) {
    Respond(res, [&] { return svc.ExportJson(); });
  });
}

CuratorServer::~CuratorServer() { Stop(); }

void CuratorServer::MountStatic(const std::string& dir) {
  if (!impl_->server.set_mount_point("/", dir)) {
    Fail(ErrorCode::kIo, "cannot serve static files from '" + dir + "'");
  }
}

int CuratorServer::Bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) Fail(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void CuratorServer::Listen() { impl_->server.listen_after_bind(); }

void CuratorServer::Stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace wikiner
