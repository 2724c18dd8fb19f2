/*
 * Copyright 2026 The cgraph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "service/workspace.hpp"

#include <map>
#include <memory>
#include <string>

namespace curriculum {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// HTTP facade over a Workspace. Requests and responses are JSON except
/// graph uploads (native text or GraphML) and rendered books (markdown).
/// Every 4xx body carries {"code", "message", "ids"}.
class Service {
public:
  explicit Service(std::shared_ptr<Workspace> workspace);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Transport-independent entry point; also used by the HTTP listener.
  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body,
                      const std::map<std::string, std::string>& query = {});

  /// Binds the listener; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); blocks.
  void run();
  void stop();

  Workspace& workspace() { return *workspace_; }

private:
  struct Http;
  std::shared_ptr<Workspace> workspace_;
  std::unique_ptr<Http> http_;
};

} // namespace curriculum
