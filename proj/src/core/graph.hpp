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

#include "core/error.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace curriculum {

/// Prerequisite strength. Declaration order is the canonical sort order.
enum class EdgeKind {
  Required,    // unconditional
  Optional,    // recommended, omissible
  Alternative, // necessary, but substitutable inside its group
};

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view s);

/// One self-contained teaching unit.
struct TopicNode {
  std::string id;
  std::string title;
  std::string cluster; // empty when absent
  int duration_minutes = 30;
  std::optional<double> page_estimate;
  std::string content_ref; // empty when absent

  bool operator==(const TopicNode&) const = default;
};

/// `tail` must be taught before `head`. A non-empty `alt_group` enrolls the
/// edge into an AltGroup; the group, not the edge, is then the obligation.
struct PrerequisiteEdge {
  std::string tail;
  std::string head;
  EdgeKind kind = EdgeKind::Required;
  std::string alt_group;

  bool grouped() const { return !alt_group.empty(); }
  auto operator<=>(const PrerequisiteEdge&) const = default;
};

std::string describe(const PrerequisiteEdge& e);

/// A set of in-edges to `head` of which at least one must be honoured.
/// Members are the edges whose alt_group names this group.
struct AltGroup {
  std::string id;
  std::string head;

  auto operator<=>(const AltGroup&) const = default;
};

/// Directed acyclic graph of topics. Plain data: build it, validate it,
/// then treat it as immutable.
struct CurriculumGraph {
  std::string discipline;
  std::vector<TopicNode> nodes;
  std::vector<PrerequisiteEdge> edges;
  std::map<std::string, AltGroup> alt_groups;
  std::map<std::string, std::string> metadata;

  const TopicNode* find_node(std::string_view id) const;
  /// metadata["version"], or "1".
  std::string version() const;
};

struct Finding {
  std::string code;
  std::string message;
  std::vector<std::string> ids;
  int line = 0; // source line when the graph came from a text document

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;

  bool ok() const { return errors.empty(); }
};

/// Source lines for each node, edge and group declaration, when known.
struct SourceMap {
  std::vector<int> node_lines;
  std::vector<int> edge_lines;
  std::map<std::string, int> group_lines;
};

/// Reports every structural problem; never throws. Findings are sorted by
/// code, then ids.
ValidationReport validate_graph(const CurriculumGraph& g, const SourceMap* source = nullptr);

/// Thrown by operations that need a usable graph. Carries the full report;
/// code() is the first error's code.
class InvalidGraphError : public Error {
public:
  explicit InvalidGraphError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// Throws InvalidGraphError unless validate_graph reports no errors.
void require_valid(const CurriculumGraph& g);

/// Absent for a DAG, otherwise [n0, ..., nk, n0]: the cycle through the
/// smallest node that lies on any cycle, found by DFS over ascending ids.
/// Throws when an edge endpoint does not resolve.
std::optional<std::vector<std::string>> detect_cycle(const CurriculumGraph& g);

/// In-edges of `id` sorted by (kind, tail).
std::vector<PrerequisiteEdge> direct_predecessors(const CurriculumGraph& g, std::string_view id);
/// Out-edges of `id` sorted by (kind, head).
std::vector<PrerequisiteEdge> direct_successors(const CurriculumGraph& g, std::string_view id);

/// Read-only adjacency over a graph whose edge endpoints resolve. Node
/// indices follow ascending id order, so index order is id order.
class GraphIndex {
public:
  explicit GraphIndex(const CurriculumGraph& g);

  const CurriculumGraph& graph() const { return *graph_; }
  std::size_t size() const { return order_.size(); }

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t at(std::string_view id) const; // throws UNKNOWN_NODE
  const TopicNode& node(std::size_t i) const { return graph_->nodes[order_[i]]; }
  const std::string& id(std::size_t i) const { return node(i).id; }

  const PrerequisiteEdge& edge(std::size_t e) const { return graph_->edges[e]; }
  std::size_t tail(std::size_t e) const { return edge_tail_[e]; }
  std::size_t head(std::size_t e) const { return edge_head_[e]; }

  /// Edge indices, sorted by (kind, tail id) / (kind, head id).
  std::span<const std::size_t> in_edges(std::size_t n) const { return in_[n]; }
  std::span<const std::size_t> out_edges(std::size_t n) const { return out_[n]; }

  /// Groups whose head is n, ascending id.
  std::span<const std::string> groups_at(std::size_t n) const { return groups_at_[n]; }
  /// Member edge indices of a group, ascending tail id.
  const std::vector<std::size_t>& members(const std::string& group) const;

  /// Kahn order over all nodes, smallest index first.
  std::vector<std::size_t> topological() const;

private:
  const CurriculumGraph* graph_;
  std::vector<std::size_t> order_; // index -> position in graph.nodes
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::vector<std::size_t> edge_tail_, edge_head_;
  std::vector<std::vector<std::size_t>> in_, out_;
  std::vector<std::vector<std::string>> groups_at_;
  std::map<std::string, std::vector<std::size_t>> members_;
};

} // namespace curriculum
