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
#include "core/graph.hpp"

#include "core/text.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <tuple>

namespace curriculum {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
  case EdgeKind::Required:
    return "required";
  case EdgeKind::Optional:
    return "optional";
  case EdgeKind::Alternative:
    return "alternative";
  }
  return "required";
}

std::optional<EdgeKind> parse_edge_kind(std::string_view s) {
  if (s == "required")
    return EdgeKind::Required;
  if (s == "optional")
    return EdgeKind::Optional;
  if (s == "alternative" || s == "alt")
    return EdgeKind::Alternative;
  return std::nullopt;
}

std::string describe(const PrerequisiteEdge& e) {
  std::string s = e.tail + " -> " + e.head + " " + std::string(to_string(e.kind));
  if (e.grouped())
    s += " [" + e.alt_group + "]";
  return s;
}

const TopicNode* CurriculumGraph::find_node(std::string_view id) const {
  for (const auto& n : nodes)
    if (n.id == id)
      return &n;
  return nullptr;
}

std::string CurriculumGraph::version() const {
  auto it = metadata.find("version");
  return it == metadata.end() ? std::string("1") : it->second;
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Smallest node on a cycle, then DFS from it over ascending neighbours
/// until an edge closes back onto it.
std::optional<std::vector<std::size_t>> find_cycle(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& out : adj)
    for (auto v : out)
      ++indeg[v];
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0)
      stack.push_back(i);
  std::size_t emitted = 0;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    ++emitted;
    for (auto v : adj[u])
      if (--indeg[v] == 0)
        stack.push_back(v);
  }
  if (emitted == n)
    return std::nullopt;

  auto reaches_self = [&](std::size_t s) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> todo(adj[s].begin(), adj[s].end());
    while (!todo.empty()) {
      auto u = todo.back();
      todo.pop_back();
      if (u == s)
        return true;
      if (seen[u])
        continue;
      seen[u] = 1;
      for (auto v : adj[u])
        todo.push_back(v);
    }
    return false;
  };

  for (std::size_t s = 0; s < n; ++s) {
    if (indeg[s] == 0 || !reaches_self(s))
      continue;
    std::vector<char> seen(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> dfs{{s, 0}};
    seen[s] = 1;
    while (!dfs.empty()) {
      auto& [u, next] = dfs.back();
      if (next == adj[u].size()) {
        dfs.pop_back();
        continue;
      }
      auto v = adj[u][next++];
      if (v == s) {
        std::vector<std::size_t> path;
        for (const auto& frame : dfs)
          path.push_back(frame.first);
        path.push_back(s);
        return path;
      }
      if (!seen[v]) {
        seen[v] = 1;
        dfs.emplace_back(v, 0);
      }
    }
  }
  return std::nullopt;
}

struct Reporter {
  ValidationReport report;

  void error(std::string code, std::string message, std::vector<std::string> ids, int line) {
    report.errors.push_back({std::move(code), std::move(message), std::move(ids), line});
  }
  void warning(std::string code, std::string message, std::vector<std::string> ids, int line) {
    report.warnings.push_back({std::move(code), std::move(message), std::move(ids), line});
  }

  ValidationReport finish() {
    auto by_key = [](const Finding& a, const Finding& b) {
      return std::tie(a.code, a.ids, a.line, a.message) <
             std::tie(b.code, b.ids, b.line, b.message);
    };
    std::sort(report.errors.begin(), report.errors.end(), by_key);
    std::sort(report.warnings.begin(), report.warnings.end(), by_key);
    return std::move(report);
  }
};

} // namespace

ValidationReport validate_graph(const CurriculumGraph& g, const SourceMap* source) {
  auto node_line = [&](std::size_t i) {
    return source && i < source->node_lines.size() ? source->node_lines[i] : 0;
  };
  auto edge_line = [&](std::size_t i) {
    return source && i < source->edge_lines.size() ? source->edge_lines[i] : 0;
  };
  auto group_line = [&](const std::string& id) {
    if (!source)
      return 0;
    auto it = source->group_lines.find(id);
    return it == source->group_lines.end() ? 0 : it->second;
  };

  Reporter r;
  if (!text::is_token(g.discipline))
    r.error("INVALID_ID", "discipline '" + g.discipline + "' is not a valid token",
            {g.discipline}, 0);

  // Unique ids, in ascending order, index the adjacency used below.
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (!index.emplace(n.id, 0).second)
      r.error("DUPLICATE_NODE_ID", "node id '" + n.id + "' declared more than once", {n.id},
              node_line(i));
    if (!text::is_token(n.id))
      r.error("INVALID_ID", "node id '" + n.id + "' is not a valid token", {n.id}, node_line(i));
    if (n.duration_minutes < 1)
      r.error("INVALID_DURATION", "node '" + n.id + "' must last at least one minute", {n.id},
              node_line(i));
    if (n.page_estimate && !(std::isfinite(*n.page_estimate) && *n.page_estimate > 0))
      r.error("INVALID_PAGE_ESTIMATE", "node '" + n.id + "' has a non-positive page estimate",
              {n.id}, node_line(i));
    if (n.title.find_first_of("\r\n") != std::string::npos)
      r.error("INVALID_TITLE", "node '" + n.id + "' title spans several lines", {n.id},
              node_line(i));
    else if (text::trim(n.title).size() != n.title.size())
      r.error("INVALID_TITLE", "node '" + n.id + "' title has leading or trailing blanks", {n.id},
              node_line(i)); // the text format trims fields
    if (!n.cluster.empty() && !text::is_token(n.cluster))
      r.error("INVALID_ID", "cluster '" + n.cluster + "' is not a valid token",
              {n.id, n.cluster}, node_line(i));
    if (!n.content_ref.empty() && !text::is_token(n.content_ref))
      r.error("INVALID_ID", "content ref '" + n.content_ref + "' is not a valid token",
              {n.id, n.content_ref}, node_line(i));
  }
  {
    std::size_t k = 0;
    for (auto& [id, idx] : index)
      idx = k++;
  }

  Adjacency adj(index.size());
  std::vector<char> touched(index.size(), 0);
  std::set<std::tuple<std::string, std::string, EdgeKind>> seen_edges;
  std::map<std::string, std::vector<std::size_t>> group_members;

  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    auto t = index.find(e.tail);
    auto h = index.find(e.head);
    if (t == index.end() || h == index.end()) {
      std::string missing = t == index.end() ? e.tail : e.head;
      r.error("DANGLING_EDGE", "edge " + describe(e) + " references unknown node '" + missing + "'",
              {e.tail, e.head}, edge_line(i));
    }
    if (e.tail == e.head) {
      r.error("SELF_LOOP", "edge " + describe(e) + " is a self-loop", {e.tail}, edge_line(i));
    } else if (t != index.end() && h != index.end()) {
      adj[t->second].push_back(h->second);
      touched[t->second] = touched[h->second] = 1;
    }
    if (!seen_edges.emplace(e.tail, e.head, e.kind).second)
      r.error("DUPLICATE_EDGE", "edge " + describe(e) + " declared more than once",
              {e.tail, e.head, std::string(to_string(e.kind))}, edge_line(i));

    if (e.kind == EdgeKind::Alternative && !e.grouped())
      r.warning("UNGROUPED_ALTERNATIVE_EDGE",
                "alternative edge " + describe(e) + " belongs to no group and acts as required",
                {e.tail, e.head}, edge_line(i));
    if (e.grouped()) {
      if (e.kind == EdgeKind::Optional) {
        r.error("INVALID_GROUP_MEMBER",
                "optional edge " + describe(e) + " cannot belong to an alternative group",
                {e.alt_group, e.tail, e.head}, edge_line(i));
      }
      auto grp = g.alt_groups.find(e.alt_group);
      if (grp == g.alt_groups.end()) {
        r.error("UNKNOWN_ALT_GROUP", "edge " + describe(e) + " names an undeclared group",
                {e.alt_group, e.tail, e.head}, edge_line(i));
      } else {
        if (grp->second.head != e.head)
          r.error("GROUP_HEAD_MISMATCH",
                  "edge " + describe(e) + " points away from its group head '" +
                      grp->second.head + "'",
                  {e.alt_group, e.tail, e.head}, edge_line(i));
        group_members[e.alt_group].push_back(i);
      }
    }
  }

  for (const auto& [id, grp] : g.alt_groups) {
    if (!text::is_token(id) || id != grp.id)
      r.error("INVALID_ID", "group id '" + grp.id + "' is not a valid token", {id},
              group_line(id));
    if (!index.count(grp.head))
      r.error("DANGLING_GROUP", "group '" + id + "' names unknown head '" + grp.head + "'",
              {id, grp.head}, group_line(id));
    const auto& members = group_members[id];
    if (members.size() < 2)
      r.error("SINGLETON_ALT_GROUP",
              "group '" + id + "' has " + std::to_string(members.size()) +
                  " member(s); at least two are required",
              {id}, group_line(id));
    std::set<std::string> tails;
    for (auto m : members)
      if (!tails.insert(g.edges[m].tail).second)
        r.error("DUPLICATE_GROUP_MEMBER",
                "group '" + id + "' lists tail '" + g.edges[m].tail + "' more than once",
                {id, g.edges[m].tail}, edge_line(m));
  }

  for (auto& out : adj) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  std::vector<std::string> ids(index.size());
  for (const auto& [id, idx] : index)
    ids[idx] = id;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!touched[i] && g.nodes.size() > 1)
      r.warning("ISOLATED_NODE", "node '" + ids[i] + "' has no prerequisites or dependents",
                {ids[i]}, 0);
  }

  if (auto cycle = find_cycle(adj)) {
    std::vector<std::string> path;
    for (auto v : *cycle)
      path.push_back(ids[v]);
    r.error("CYCLE", "prerequisite cycle " + text::join(path, " -> "), path, 0);
  }
  return r.finish();
}

InvalidGraphError::InvalidGraphError(ValidationReport report)
    : Error(ErrorCategory::Validation,
            report.errors.empty() ? std::string("INVALID_GRAPH") : report.errors.front().code,
            report.errors.empty() ? std::string("graph is not usable")
                                  : "graph is not usable: " + report.errors.front().message,
            report.errors.empty() ? std::vector<std::string>{} : report.errors.front().ids),
      report_(std::move(report)) {}

void require_valid(const CurriculumGraph& g) {
  auto report = validate_graph(g);
  if (!report.ok())
    throw InvalidGraphError(std::move(report));
}

std::optional<std::vector<std::string>> detect_cycle(const CurriculumGraph& g) {
  GraphIndex idx(g);
  Adjacency adj(idx.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    adj[idx.tail(e)].push_back(idx.head(e));
  for (auto& out : adj) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  auto cycle = find_cycle(adj);
  if (!cycle)
    return std::nullopt;
  std::vector<std::string> path;
  for (auto v : *cycle)
    path.push_back(idx.id(v));
  return path;
}

std::vector<PrerequisiteEdge> direct_predecessors(const CurriculumGraph& g, std::string_view id) {
  GraphIndex idx(g);
  std::vector<PrerequisiteEdge> out;
  for (auto e : idx.in_edges(idx.at(id)))
    out.push_back(idx.edge(e));
  return out;
}

std::vector<PrerequisiteEdge> direct_successors(const CurriculumGraph& g, std::string_view id) {
  GraphIndex idx(g);
  std::vector<PrerequisiteEdge> out;
  for (auto e : idx.out_edges(idx.at(id)))
    out.push_back(idx.edge(e));
  return out;
}

GraphIndex::GraphIndex(const CurriculumGraph& g) : graph_(&g) {
  order_.resize(g.nodes.size());
  for (std::size_t i = 0; i < order_.size(); ++i)
    order_[i] = i;
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return g.nodes[a].id < g.nodes[b].id; });
  // Later duplicates are unreachable through find(); validation reports them.
  order_.erase(std::unique(order_.begin(), order_.end(),
                           [&](std::size_t a, std::size_t b) {
                             return g.nodes[a].id == g.nodes[b].id;
                           }),
               order_.end());
  for (std::size_t i = 0; i < order_.size(); ++i)
    by_id_.emplace(g.nodes[order_[i]].id, i);

  in_.resize(order_.size());
  out_.resize(order_.size());
  groups_at_.resize(order_.size());
  edge_tail_.resize(g.edges.size());
  edge_head_.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto t = find(g.edges[e].tail);
    auto h = find(g.edges[e].head);
    if (!t || !h)
      throw Error(ErrorCategory::Validation, "DANGLING_EDGE",
                  "edge " + describe(g.edges[e]) + " references an unknown node",
                  {g.edges[e].tail, g.edges[e].head});
    edge_tail_[e] = *t;
    edge_head_[e] = *h;
    in_[*h].push_back(e);
    out_[*t].push_back(e);
  }
  for (auto& list : in_)
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(g.edges[a].kind, edge_tail_[a], a) < std::tie(g.edges[b].kind, edge_tail_[b], b);
    });
  for (auto& list : out_)
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(g.edges[a].kind, edge_head_[a], a) < std::tie(g.edges[b].kind, edge_head_[b], b);
    });

  for (const auto& [id, grp] : g.alt_groups) {
    members_[id];
    if (auto h = find(grp.head))
      groups_at_[*h].push_back(id);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    if (edge.grouped() && members_.count(edge.alt_group))
      members_[edge.alt_group].push_back(e);
  }
  for (auto& [id, list] : members_)
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(edge_tail_[a], g.edges[a].kind) < std::tie(edge_tail_[b], g.edges[b].kind);
    });
}

std::optional<std::size_t> GraphIndex::find(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    return std::nullopt;
  return it->second;
}

std::size_t GraphIndex::at(std::string_view id) const {
  if (auto i = find(id))
    return *i;
  throw Error(ErrorCategory::Validation, "UNKNOWN_NODE", "unknown node '" + std::string(id) + "'",
              {std::string(id)});
}

const std::vector<std::size_t>& GraphIndex::members(const std::string& group) const {
  auto it = members_.find(group);
  if (it == members_.end())
    throw Error(ErrorCategory::Validation, "UNKNOWN_ALT_GROUP", "unknown group '" + group + "'",
                {group});
  return it->second;
}

std::vector<std::size_t> GraphIndex::topological() const {
  std::vector<std::size_t> indeg(size(), 0);
  for (std::size_t e = 0; e < edge_head_.size(); ++e)
    ++indeg[edge_head_[e]];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < size(); ++i)
    if (indeg[i] == 0)
      ready.push(i);
  std::vector<std::size_t> order;
  order.reserve(size());
  while (!ready.empty()) {
    auto u = ready.top();
    ready.pop();
    order.push_back(u);
    for (auto e : out_[u])
      if (--indeg[edge_head_[e]] == 0)
        ready.push(edge_head_[e]);
  }
  if (order.size() != size())
    throw Error(ErrorCategory::Validation, "CYCLE", "graph contains a prerequisite cycle");
  return order;
}

} // namespace curriculum
