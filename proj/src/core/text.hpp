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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small string and file helpers shared by the parsers and writers.
namespace curriculum::text {

/// Identifier tokens: non-empty, [a-z0-9_:-]+.
bool is_token(std::string_view s);

/// Lowercase ASCII token without namespace separators: [a-z0-9_]+.
bool is_tag(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
/// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string_view> split_ws(std::string_view s);
/// Comma list, trimmed, empty entries dropped.
std::vector<std::string> split_list(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_decimal(std::string_view s);
/// Shortest representation that parses back to the same double.
std::string format_decimal(double v);

/// Lowercases ASCII and folds every other run of characters into '_'.
std::string slugify(std::string_view s);

/// Hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// UTC "YYYY-MM-DDTHH:MM:SSZ".
std::string iso8601(std::int64_t epoch_seconds);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

} // namespace curriculum::text
