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

#include "core/book.hpp"
#include "core/graph.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curriculum {

/// Malformed input with a 1-based location.
class SyntaxError : public Error {
public:
  SyntaxError(std::string code, int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

struct NativeDocument {
  CurriculumGraph graph;
  SourceMap source;
  ValidationReport report; // with source lines
};

/// Native line format:
///   graph <discipline>
///   meta <key> <value>
///   node <id> | <title> | <cluster|-> | <minutes> | <content_ref|-> [| <pages|->]
///   group <id> <head>
///   edge <tail> -> <head> [required|optional|alt:<group>|required:<group>]
/// Titles escape '|' and '\' with a backslash. Throws SyntaxError; graph
/// problems land in the report instead.
NativeDocument parse_native(std::string_view text);

/// Canonical text: header, meta by key, nodes by id, groups by id, edges
/// by (tail, head, kind).
std::string write_native(const CurriculumGraph& g);

/// Same discipline, metadata, groups, and node and edge sets.
bool structurally_equal(const CurriculumGraph& a, const CurriculumGraph& b);

/// Line color -> edge kind.
struct ColorMap {
  std::vector<std::pair<std::string, EdgeKind>> colors; // "#rrggbb"
  /// Match the closest listed color instead of requiring an exact one.
  bool nearest = false;

  static ColorMap defaults();
  /// "#000000=required,#008000=optional,#ff0000=alternative[,nearest]";
  /// entries override the defaults for the same kind.
  static ColorMap parse(std::string_view spec);
  std::optional<EdgeKind> classify(std::string_view color) const;
};

struct GraphMLOptions {
  std::string discipline = "imported";
  /// Derive node ids from labels instead of element ids.
  bool ids_from_labels = false;
  int default_duration = 30;
};

struct GraphMLImport {
  CurriculumGraph graph;
  std::vector<Finding> warnings;
};

/// yEd GraphML subset: nested graphs (group nodes become clusters), node
/// labels, edge line colors, and optional duration/content/pages keys.
GraphMLImport import_graphml(std::string_view xml, const ColorMap& colors = ColorMap::defaults(),
                             const GraphMLOptions& options = {});

/// Reads a native or GraphML graph file, by content sniffing. Throws on
/// syntax errors and on graphs with validation errors.
CurriculumGraph load_graph_file(const std::filesystem::path& path);

/// Manifest lines `token<TAB>relative/path`, relative to `base`. Each
/// document's leading `# ` line is its title. Throws listing every
/// unreadable file.
ContentStore parse_content_manifest(std::string_view manifest, const std::filesystem::path& base);
ContentStore load_content_store(const std::filesystem::path& manifest);

/// Blocks of `exercise <id> local <node>` or `exercise <id> external <a,b>`
/// followed by `prompt <token>` and optionally `difficulty <1-5>`.
std::vector<Exercise> parse_exercises(std::string_view text);
std::string write_exercises(std::span<const Exercise> exercises);
/// Parses and validates against `g`.
std::vector<Exercise> load_exercises(const std::filesystem::path& path, const CurriculumGraph& g);

} // namespace curriculum
