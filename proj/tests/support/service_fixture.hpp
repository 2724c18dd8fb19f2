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

// Seeded service workspaces and the adversarial request table shared by the
// server tests and the acceptance suite.

#include "service/server.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cgtest {

/// Workspace directory with latin-32 (v1 and v2), italiano, the content store,
/// the latin exercise pool and tag index.
void seed_workspace(const std::filesystem::path& root);

struct BadRequest {
  std::string name;
  std::string method;
  std::string path;
  std::string body;
  int status;
  std::string code; // expected error code in the JSON body
};

/// Requests a hostile or careless client might send against a seeded
/// workspace. Each must get a structured 4xx.
std::vector<BadRequest> adversarial_requests();

/// Runs every adversarial request through `service`; returns one line per
/// mismatch.
std::vector<std::string> run_adversarial(curriculum::Service& service);

} // namespace cgtest
