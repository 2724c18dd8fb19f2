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
#include "core/interop.hpp"

#include "core/text.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace curriculum {

std::vector<CrossEdge> parse_cross_edges(std::string_view content) {
  std::vector<CrossEdge> out;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split_ws(line);
    if (f.size() != 4 || f[0] != "cross" || f[2] != "->")
      throw Error(ErrorCategory::Validation, "CROSS_SYNTAX",
                  "cross-edge line " + std::to_string(line_no) +
                      ": expected 'cross <tail> -> <head>'");
    out.push_back({std::string(f[1]), std::string(f[3])});
  }
  return out;
}

std::string namespaced(std::string_view discipline, std::string_view id) {
  return std::string(discipline) + ":" + std::string(id);
}

CurriculumGraph merge_graphs(std::span<const CurriculumGraph> graphs,
                             std::span<const CrossEdge> cross, const MergeOptions& options) {
  if (graphs.empty())
    throw Error(ErrorCategory::Usage, "EMPTY_MERGE", "at least one graph is required");
  std::set<std::string> seen;
  std::vector<std::string> names;
  for (const auto& g : graphs) {
    if (!seen.insert(g.discipline).second)
      throw Error(ErrorCategory::Validation, "DUPLICATE_DISCIPLINE",
                  "discipline '" + g.discipline + "' appears twice", {g.discipline});
    names.push_back(g.discipline);
    require_valid(g);
  }

  CurriculumGraph merged;
  merged.discipline = options.discipline.empty() ? text::join(names, "-") : options.discipline;
  merged.metadata["merged_from"] = text::join(names, ",");
  std::map<std::string, std::string> owner;
  for (const auto& g : graphs) {
    const auto& d = g.discipline;
    for (auto node : g.nodes) {
      node.id = namespaced(d, node.id);
      if (!node.cluster.empty())
        node.cluster = namespaced(d, node.cluster);
      owner.emplace(node.id, d);
      merged.nodes.push_back(std::move(node));
    }
    for (auto e : g.edges) {
      e.tail = namespaced(d, e.tail);
      e.head = namespaced(d, e.head);
      if (e.grouped())
        e.alt_group = namespaced(d, e.alt_group);
      merged.edges.push_back(std::move(e));
    }
    for (const auto& [gid, group] : g.alt_groups) {
      auto id = namespaced(d, gid);
      merged.alt_groups.emplace(id, AltGroup{id, namespaced(d, group.head)});
    }
  }
  for (const auto& c : cross) {
    auto t = owner.find(c.tail);
    auto h = owner.find(c.head);
    if (t == owner.end() || h == owner.end())
      throw Error(ErrorCategory::Validation, "CROSS_EDGE_ENDPOINT",
                  "cross edge " + c.tail + " -> " + c.head + " names an unknown node",
                  {c.tail, c.head});
    if (t->second == h->second)
      throw Error(ErrorCategory::Validation, "CROSS_EDGE_SAME_DISCIPLINE",
                  "cross edge " + c.tail + " -> " + c.head + " stays inside '" + t->second + "'",
                  {c.tail, c.head});
    merged.edges.push_back({c.tail, c.head, EdgeKind::Required, {}});
  }
  merged.metadata["cross_edges"] = std::to_string(cross.size());

  auto report = validate_graph(merged);
  for (const auto& f : report.errors)
    if (f.code == "CYCLE")
      throw Error(ErrorCategory::Constraint, "CYCLE",
                  "merge introduces a cycle: " + text::join(f.ids, " -> "), f.ids);
  if (!report.ok())
    throw InvalidGraphError(std::move(report));
  return merged;
}

std::string discipline_of(const CurriculumGraph& merged, std::string_view id) {
  auto it = merged.metadata.find("merged_from");
  if (it == merged.metadata.end())
    return {};
  std::string best;
  for (const auto& d : text::split_list(it->second))
    if (id.size() > d.size() && id.substr(0, d.size()) == d && id[d.size()] == ':' &&
        d.size() > best.size())
      best = d;
  return best;
}

std::vector<CrossEdge> cross_edges_of(const CurriculumGraph& merged) {
  std::vector<CrossEdge> out;
  for (const auto& e : merged.edges) {
    auto a = discipline_of(merged, e.tail);
    auto b = discipline_of(merged, e.head);
    if (!a.empty() && !b.empty() && a != b)
      out.push_back({e.tail, e.head});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DisciplineOrders parse_orders(std::string_view content) {
  DisciplineOrders out;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split(line, '\t');
    if (f.size() != 2 || text::trim(f[0]).empty())
      throw Error(ErrorCategory::Validation, "ORDERS_SYNTAX",
                  "orders line " + std::to_string(line_no) + ": expected 'discipline<TAB>n1,n2,...'");
    auto d = std::string(text::trim(f[0]));
    if (out.count(d))
      throw Error(ErrorCategory::Validation, "ORDERS_SYNTAX",
                  "orders line " + std::to_string(line_no) + ": discipline '" + d + "' repeated");
    out.emplace(d, text::split_list(f[1]));
  }
  return out;
}

Calendar parse_calendar(std::string_view content) {
  Calendar out;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split(line, '\t');
    std::optional<std::int64_t> index, week;
    if (f.size() == 3) {
      index = text::parse_int(text::trim(f[1]));
      week = text::parse_int(text::trim(f[2]));
    }
    if (!index || !week || *index < 0)
      throw Error(ErrorCategory::Validation, "CALENDAR_SYNTAX",
                  "calendar line " + std::to_string(line_no) +
                      ": expected 'discipline<TAB>index<TAB>week'");
    out[std::string(text::trim(f[0]))][static_cast<std::size_t>(*index)] = *week;
  }
  return out;
}

std::string_view to_string(SyncStatus s) {
  switch (s) {
  case SyncStatus::Satisfiable:
    return "SATISFIABLE";
  case SyncStatus::Violated:
    return "VIOLATED";
  case SyncStatus::Inconsistent:
    return "INCONSISTENT";
  case SyncStatus::Unscheduled:
    return "UNSCHEDULED";
  }
  return "UNSCHEDULED";
}

std::vector<SyncFinding> sync_report(const CurriculumGraph& merged, const DisciplineOrders& orders,
                                     const Calendar* calendar) {
  require_valid(merged);
  GraphIndex idx(merged);
  const auto n = idx.size();

  // Position of every scheduled node inside its own discipline's order.
  std::vector<std::optional<std::size_t>> pos(n);
  std::map<std::string, std::vector<std::size_t>> chains;
  for (const auto& [d, nodes] : orders) {
    auto& chain = chains[d];
    for (const auto& raw : nodes) {
      auto id = discipline_of(merged, raw) == d ? raw : namespaced(d, raw);
      auto v = idx.find(id);
      if (!v)
        throw Error(ErrorCategory::Validation, "UNKNOWN_NODE",
                    "order of '" + d + "' names unknown node '" + raw + "'", {raw});
      if (pos[*v])
        throw Error(ErrorCategory::Validation, "ORDER_MISMATCH",
                    "'" + id + "' is scheduled twice", {id});
      pos[*v] = chain.size();
      chain.push_back(*v);
    }
  }
  for (std::size_t e = 0; e < merged.edges.size(); ++e) {
    auto t = idx.tail(e), h = idx.head(e);
    auto dt = discipline_of(merged, idx.id(t));
    if (dt != discipline_of(merged, idx.id(h)) || !pos[t] || !pos[h] || !orders.count(dt))
      continue;
    if (*pos[t] > *pos[h])
      throw Error(ErrorCategory::Validation, "ORDER_VIOLATION",
                  "order of '" + dt + "' puts " + idx.id(h) + " before " + idx.id(t),
                  {idx.id(t), idx.id(h)});
  }

  auto cross = cross_edges_of(merged);

  // Fixed chains plus cross edges: a joint interleaving exists iff this
  // graph is acyclic. Cross edges inside a strongly connected component
  // are the inconsistent ones.
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [d, chain] : chains)
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      adj[chain[i]].push_back(chain[i + 1]);
  for (const auto& c : cross)
    adj[idx.at(c.tail)].push_back(idx.at(c.head));
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1);
  std::vector<std::size_t> stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0, comps = 0;
  std::function<void(std::size_t)> tarjan = [&](std::size_t v) {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (auto w : adj[v]) {
      if (num[w] < 0) {
        tarjan(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (num[v] < 0)
      tarjan(v);

  // Descendants of each tail over the merged graph, for the deadline.
  auto descendants = [&](std::size_t from) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> todo{from};
    seen[from] = 1;
    while (!todo.empty()) {
      auto v = todo.back();
      todo.pop_back();
      for (auto e : idx.out_edges(v))
        if (!seen[idx.head(e)]) {
          seen[idx.head(e)] = 1;
          todo.push_back(idx.head(e));
        }
    }
    return seen;
  };

  std::vector<SyncFinding> out;
  for (const auto& c : cross) {
    SyncFinding f;
    f.edge = c;
    auto t = idx.at(c.tail), h = idx.at(c.head);
    auto dt = discipline_of(merged, c.tail), dh = discipline_of(merged, c.head);
    f.tail_index = pos[t];
    f.head_index = pos[h];
    if (auto it = chains.find(dh); it != chains.end()) {
      auto below = descendants(t);
      for (std::size_t i = 0; i < it->second.size(); ++i)
        if (below[it->second[i]]) {
          f.deadline = i;
          break;
        }
    }
    if (calendar) {
      auto week = [&](const std::string& d, std::optional<std::size_t> p) -> std::optional<long long> {
        auto cd = calendar->find(d);
        if (!p || cd == calendar->end())
          return std::nullopt;
        auto w = cd->second.find(*p);
        return w == cd->second.end() ? std::nullopt : std::optional<long long>(w->second);
      };
      f.tail_week = week(dt, f.tail_index);
      f.head_week = week(dh, f.head_index);
    }

    if (!f.tail_index || !f.head_index) {
      f.status = SyncStatus::Unscheduled;
      f.detail = !f.tail_index ? c.tail + " is not in the " + dt + " order"
                               : c.head + " is not in the " + dh + " order";
    } else if (comp[t] == comp[h]) {
      f.status = SyncStatus::Inconsistent;
      f.detail = "no joint schedule honours both discipline orders";
    } else if (calendar && (!f.tail_week || !f.head_week)) {
      f.status = SyncStatus::Unscheduled;
      f.detail = "calendar has no week for " + (!f.tail_week ? c.tail : c.head);
    } else if (calendar && *f.head_week < *f.tail_week) {
      f.status = SyncStatus::Violated;
      f.detail = c.head + " (week " + std::to_string(*f.head_week) + ") is taught before " +
                 c.tail + " (week " + std::to_string(*f.tail_week) + ")";
    } else {
      f.status = SyncStatus::Satisfiable;
      f.detail = "cover " + c.tail + " before position " +
                 std::to_string(f.deadline.value_or(*f.head_index)) + " of " + dh;
    }
    out.push_back(std::move(f));
  }
  return out;
}

void TagIndex::add(std::string tag, std::vector<std::string> nodes) {
  auto& slot = entries_[std::move(tag)];
  slot.insert(slot.end(), nodes.begin(), nodes.end());
  std::sort(slot.begin(), slot.end());
  slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
}

const std::vector<std::string>* TagIndex::find(std::string_view tag) const {
  auto it = entries_.find(tag);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

std::string normalize_tag(std::string_view raw) {
  std::string t(text::trim(raw));
  for (auto& c : t)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return t;
}

} // namespace

TagIndex parse_tag_index(std::string_view content) {
  TagIndex index;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split(line, '\t');
    auto fail = [&](const std::string& why) {
      return Error(ErrorCategory::Validation, "TAG_INDEX_SYNTAX",
                   "tag index line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() != 2)
      throw fail("expected 'tag<TAB>node[,node...]'");
    auto tag = std::string(text::trim(f[0]));
    if (!text::is_tag(tag))
      throw fail("tag '" + tag + "' must be a lowercase token");
    auto nodes = text::split_list(f[1]);
    if (nodes.empty())
      throw fail("tag '" + tag + "' maps to no nodes");
    index.add(std::move(tag), std::move(nodes));
  }
  return index;
}

void validate_tag_index(const TagIndex& index, const CurriculumGraph& g) {
  for (const auto& [tag, nodes] : index.entries())
    for (const auto& n : nodes)
      if (!g.find_node(n))
        throw Error(ErrorCategory::Validation, "UNKNOWN_NODE",
                    "tag '" + tag + "' maps to unknown node '" + n + "'", {tag, n});
}

CompetencyReport competency_lookup(const TagIndex& index, std::span<const std::string> tags,
                                   const CurriculumGraph& g, const ClosurePolicy& policy) {
  validate_tag_index(index, g);
  CompetencyReport report;
  std::set<std::string> seen;
  for (const auto& raw : tags) {
    auto tag = normalize_tag(raw);
    if (tag.empty() || !seen.insert(tag).second)
      continue;
    report.tags.push_back(tag);
    if (const auto* hit = index.find(tag))
      report.direct_nodes.insert(hit->begin(), hit->end());
    else
      report.unknown_tags.push_back(tag);
  }
  if (report.direct_nodes.empty())
    throw Error(ErrorCategory::Validation, "NO_MATCH",
                "no known tag among: " + text::join(report.unknown_tags, ", "),
                report.unknown_tags);
  report.closure = predecessor_closure(g, report.direct_nodes, policy);
  return report;
}

Exercise register_exercise_from_tags(const TagIndex& index, std::span<const std::string> tags,
                                     const std::string& prompt_ref, const CurriculumGraph& g) {
  auto report = competency_lookup(index, tags, g);
  std::vector<std::string> sorted = report.tags;
  std::sort(sorted.begin(), sorted.end());
  Exercise ex;
  ex.id = "ex-" + text::sha256_hex(text::join(sorted, ",") + "\n" + prompt_ref).substr(0, 12);
  ex.kind = Exercise::Kind::External;
  ex.nodes.assign(report.direct_nodes.begin(), report.direct_nodes.end());
  ex.prompt_ref = prompt_ref;
  return ex;
}

std::vector<AnalyzedForm> parse_analyzer_export(std::string_view content) {
  std::vector<AnalyzedForm> out;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split(line, '\t');
    if (f.size() != 2 || text::trim(f[0]).empty())
      throw Error(ErrorCategory::Validation, "ANALYZER_SYNTAX",
                  "analyzer line " + std::to_string(line_no) + ": expected 'form<TAB>tag[,tag...]'");
    out.push_back({std::string(text::trim(f[0])), text::split_list(f[1]), line_no});
  }
  return out;
}

std::string form_prompt_ref(std::string_view form) {
  std::string ref = "form:";
  for (char c : text::trim(form))
    ref += std::isspace(static_cast<unsigned char>(c)) ? '_' : c;
  return ref;
}

std::vector<FormOutcome> process_analyzer_export(const TagIndex& index,
                                                 std::span<const AnalyzedForm> forms,
                                                 const CurriculumGraph& g, bool make_exercises) {
  std::vector<FormOutcome> out;
  for (const auto& form : forms) {
    FormOutcome o;
    o.form = form;
    try {
      o.report = competency_lookup(index, form.tags, g);
      if (make_exercises)
        o.exercise = register_exercise_from_tags(index, form.tags, form_prompt_ref(form.form), g);
    } catch (const Error& e) {
      if (e.code() != "NO_MATCH")
        throw;
      o.error = e.code();
    }
    out.push_back(std::move(o));
  }
  return out;
}

} // namespace curriculum
