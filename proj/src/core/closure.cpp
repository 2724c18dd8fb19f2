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
#include "core/closure.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>

namespace curriculum {

ClosurePolicy ClosurePolicy::minimal(bool include_optional) {
  ClosurePolicy p;
  p.include_optional = include_optional;
  return p;
}

ClosurePolicy ClosurePolicy::prefer(std::vector<std::string> preferred, bool include_optional) {
  ClosurePolicy p;
  p.include_optional = include_optional;
  p.resolution = Resolution::PreferredList;
  p.preferred = std::move(preferred);
  return p;
}

ClosurePolicy ClosurePolicy::explicit_choices(std::map<std::string, std::string> choices,
                                              bool include_optional) {
  ClosurePolicy p;
  p.include_optional = include_optional;
  p.resolution = Resolution::Explicit;
  p.choices = std::move(choices);
  return p;
}

namespace {

std::vector<std::string> group_ids(const std::vector<ChoicePoint>& points) {
  std::vector<std::string> ids;
  for (const auto& p : points)
    ids.push_back(p.group);
  return ids;
}

std::string choice_message(const std::vector<ChoicePoint>& points) {
  std::string msg = "unresolved alternative group(s):";
  for (const auto& p : points)
    msg += " " + p.group;
  return msg;
}

using Bits = boost::dynamic_bitset<>;
using Chooser = std::function<std::optional<std::size_t>(const std::string&)>;

struct Walk {
  std::vector<char> in;
  std::set<std::string> unresolved;
};

bool follows(const PrerequisiteEdge& e, bool include_optional) {
  if (e.grouped())
    return false;
  return e.kind != EdgeKind::Optional || include_optional;
}

/// Backward visit from the targets. Every node enters because a target or
/// an already-included node demands it, which keeps the result minimal for
/// the choices made.
Walk walk_back(const GraphIndex& idx, const std::vector<std::size_t>& targets,
               bool include_optional, const Chooser& choose) {
  Walk w;
  w.in.assign(idx.size(), 0);
  std::vector<std::size_t> todo;
  auto visit = [&](std::size_t v) {
    if (!w.in[v]) {
      w.in[v] = 1;
      todo.push_back(v);
    }
  };
  for (auto t : targets)
    visit(t);
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    for (auto e : idx.in_edges(v))
      if (follows(idx.edge(e), include_optional))
        visit(idx.tail(e));
    for (const auto& gid : idx.groups_at(v)) {
      if (auto m = choose(gid))
        visit(idx.tail(*m));
      else
        w.unresolved.insert(gid);
    }
  }
  return w;
}

/// Bottom-up pass over the whole graph: each group is resolved once, from
/// the memoized closures of its member tails.
std::map<std::string, std::size_t> resolve_all_groups(const GraphIndex& idx,
                                                      const ClosurePolicy& policy,
                                                      std::vector<std::size_t>* sizes = nullptr) {
  const auto n = idx.size();
  std::vector<Bits> memo(n);
  std::map<std::string, std::size_t> chosen;
  auto pick = [&](const std::string& gid) -> std::size_t {
    const auto& members = idx.members(gid);
    if (auto it = policy.choices.find(gid); it != policy.choices.end())
      for (auto m : members)
        if (idx.id(idx.tail(m)) == it->second)
          return m;
    if (policy.resolution == ClosurePolicy::Resolution::PreferredList) {
      for (const auto& want : policy.preferred)
        for (auto m : members)
          if (idx.id(idx.tail(m)) == want)
            return m;
    }
    std::size_t best = members.front();
    for (auto m : members)
      if (memo[idx.tail(m)].count() < memo[idx.tail(best)].count())
        best = m;
    return best;
  };
  for (auto v : idx.topological()) {
    Bits b(n);
    b.set(v);
    for (auto e : idx.in_edges(v))
      if (follows(idx.edge(e), policy.include_optional))
        b |= memo[idx.tail(e)];
    for (const auto& gid : idx.groups_at(v)) {
      auto m = pick(gid);
      chosen[gid] = m;
      b |= memo[idx.tail(m)];
    }
    memo[v] = std::move(b);
  }
  if (sizes) {
    sizes->resize(n);
    for (std::size_t i = 0; i < n; ++i)
      (*sizes)[i] = memo[i].count();
  }
  return chosen;
}

std::vector<std::size_t> resolve_targets(const GraphIndex& idx,
                                         const std::set<std::string>& targets) {
  if (targets.empty())
    throw Error(ErrorCategory::Validation, "EMPTY_TARGETS", "at least one target is required");
  std::vector<std::size_t> out;
  for (const auto& t : targets)
    out.push_back(idx.at(t));
  return out;
}

ClosureResult finish(const GraphIndex& idx, const std::set<std::string>& targets, const Walk& w,
                     const std::map<std::string, std::size_t>& chosen) {
  std::set<std::string> nodes;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (w.in[i])
      nodes.insert(idx.id(i));
  std::map<std::string, PrerequisiteEdge> resolved;
  for (const auto& [gid, e] : chosen)
    resolved.emplace(gid, idx.edge(e));
  return make_closure(idx.graph(), targets, std::move(nodes), resolved);
}

std::vector<ChoicePoint> choice_points(const GraphIndex& idx, const std::set<std::string>& groups,
                                       bool include_optional) {
  std::vector<std::size_t> sizes;
  resolve_all_groups(idx, ClosurePolicy::minimal(include_optional), &sizes);
  std::vector<ChoicePoint> points;
  for (const auto& gid : groups) {
    ChoicePoint p;
    p.group = gid;
    p.head = idx.graph().alt_groups.at(gid).head;
    for (auto m : idx.members(gid)) {
      p.members.push_back(idx.edge(m));
      p.closure_sizes.push_back(sizes[idx.tail(m)]);
    }
    points.push_back(std::move(p));
  }
  return points;
}

} // namespace

UnresolvedChoiceError::UnresolvedChoiceError(std::vector<ChoicePoint> points)
    : Error(ErrorCategory::Constraint, "UNRESOLVED_CHOICE", choice_message(points),
            group_ids(points)),
      points_(std::move(points)) {}

ClosureResult predecessor_closure(const CurriculumGraph& g, const std::set<std::string>& targets,
                                  const ClosurePolicy& policy) {
  require_valid(g);
  GraphIndex idx(g);
  auto roots = resolve_targets(idx, targets);

  std::map<std::string, std::size_t> chosen;
  for (const auto& [gid, tail] : policy.choices) {
    if (!g.alt_groups.count(gid))
      throw Error(ErrorCategory::Validation, "UNKNOWN_ALT_GROUP",
                  "choice names unknown group '" + gid + "'", {gid});
    const auto& members = idx.members(gid);
    auto it = std::find_if(members.begin(), members.end(),
                           [&](std::size_t m) { return idx.id(idx.tail(m)) == tail; });
    if (it == members.end())
      throw Error(ErrorCategory::Validation, "INVALID_CHOICE",
                  "'" + tail + "' is not a member tail of group '" + gid + "'", {gid, tail});
    chosen[gid] = *it;
  }
  if (policy.resolution != ClosurePolicy::Resolution::Explicit)
    chosen = resolve_all_groups(idx, policy);

  Chooser choose = [&](const std::string& gid) -> std::optional<std::size_t> {
    auto it = chosen.find(gid);
    if (it == chosen.end())
      return std::nullopt;
    return it->second;
  };
  auto walk = walk_back(idx, roots, policy.include_optional, choose);
  if (!walk.unresolved.empty())
    throw UnresolvedChoiceError(choice_points(idx, walk.unresolved, policy.include_optional));
  return finish(idx, targets, walk, chosen);
}

ClosureEnumeration enumerate_closures(const CurriculumGraph& g,
                                      const std::set<std::string>& targets,
                                      bool include_optional, std::size_t cap) {
  if (cap == 0)
    throw Error(ErrorCategory::Usage, "INVALID_CAP", "cap must be positive");
  require_valid(g);
  GraphIndex idx(g);
  auto roots = resolve_targets(idx, targets);

  // Exploration is exponential in the number of groups reached; bound the
  // number of complete choice vectors examined.
  constexpr std::size_t kExploreLimit = 1'000'000;
  std::size_t explored = 0;
  bool exhausted = false;

  std::map<std::string, std::size_t> choices;
  Chooser choose = [&](const std::string& gid) -> std::optional<std::size_t> {
    auto it = choices.find(gid);
    if (it == choices.end())
      return std::nullopt;
    return it->second;
  };
  std::map<std::vector<std::string>, ClosureResult> distinct;

  std::function<void()> explore = [&]() {
    if (exhausted)
      return;
    auto walk = walk_back(idx, roots, include_optional, choose);
    if (walk.unresolved.empty()) {
      if (++explored > kExploreLimit) {
        exhausted = true;
        return;
      }
      auto result = finish(idx, targets, walk, choices);
      std::vector<std::string> key(result.nodes.begin(), result.nodes.end());
      distinct.try_emplace(std::move(key), std::move(result));
      return;
    }
    const auto gid = *walk.unresolved.begin();
    for (auto m : idx.members(gid)) {
      choices[gid] = m;
      explore();
    }
    choices.erase(gid);
  };
  explore();

  std::vector<const std::pair<const std::vector<std::string>, ClosureResult>*> sorted;
  for (const auto& entry : distinct)
    sorted.push_back(&entry);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    if (a->first.size() != b->first.size())
      return a->first.size() < b->first.size();
    return a->first < b->first;
  });
  ClosureEnumeration out;
  out.truncated = exhausted || sorted.size() > cap;
  for (std::size_t i = 0; i < sorted.size() && i < cap; ++i)
    out.closures.push_back(sorted[i]->second);
  return out;
}

ClosureResult make_closure(const CurriculumGraph& g, std::set<std::string> targets,
                           std::set<std::string> nodes,
                           const std::map<std::string, PrerequisiteEdge>& resolved) {
  ClosureResult r;
  for (const auto& e : g.edges) {
    bool head_in = nodes.count(e.head) > 0;
    bool tail_in = nodes.count(e.tail) > 0;
    if (head_in && tail_in)
      r.induced_edges.push_back(e);
    else if (head_in && e.kind == EdgeKind::Optional)
      r.skipped_optional.push_back(e);
  }
  std::sort(r.induced_edges.begin(), r.induced_edges.end());
  std::sort(r.skipped_optional.begin(), r.skipped_optional.end());
  for (const auto& [gid, edge] : resolved)
    if (nodes.count(edge.head))
      r.resolved_groups.emplace(gid, edge);
  r.targets = std::move(targets);
  r.nodes = std::move(nodes);
  return r;
}

std::optional<MissingPrerequisite>
first_missing_prerequisite(const CurriculumGraph& g, const std::vector<std::string>& nodes,
                           const std::set<std::string>& present) {
  GraphIndex idx(g);
  for (const auto& id : nodes) {
    auto v = idx.at(id);
    for (auto e : idx.in_edges(v)) {
      const auto& edge = idx.edge(e);
      if (edge.grouped() || edge.kind == EdgeKind::Optional)
        continue;
      if (!present.count(edge.tail))
        return MissingPrerequisite{id, edge.tail, edge, false};
    }
    for (const auto& gid : idx.groups_at(v)) {
      const auto& members = idx.members(gid);
      bool any = std::any_of(members.begin(), members.end(),
                             [&](std::size_t m) { return present.count(idx.id(idx.tail(m))) > 0; });
      if (!any)
        return MissingPrerequisite{id, gid, std::nullopt, true};
    }
  }
  return std::nullopt;
}

} // namespace curriculum
