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

#include <stdexcept>
#include <string>
#include <vector>

namespace curriculum {

/// Broad failure class. Maps one-to-one onto CLI exit codes and C API
/// status values.
enum class ErrorCategory {
  Usage = 1,
  Validation = 2,
  Io = 3,
  Constraint = 4,
  Internal = 5,
};

/// Engine error: a category, a machine-readable code (the same vocabulary
/// as validation findings) and the ids it concerns.
class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, std::string code, const std::string& message,
        std::vector<std::string> ids = {})
      : std::runtime_error(message), category_(category), code_(std::move(code)),
        ids_(std::move(ids)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& code() const noexcept { return code_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

private:
  ErrorCategory category_;
  std::string code_;
  std::vector<std::string> ids_;
};

} // namespace curriculum
