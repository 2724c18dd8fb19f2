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
#include "core/book.hpp"

#include "core/text.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace curriculum {

namespace {

int difficulty_key(const Exercise& e) { return e.difficulty.value_or(6); }

bool has_space(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

} // namespace

void validate_exercises(const CurriculumGraph& g, std::span<const Exercise> exercises) {
  std::set<std::string> ids;
  for (const auto& ex : exercises) {
    if (!text::is_token(ex.id))
      throw Error(ErrorCategory::Validation, "INVALID_ID",
                  "exercise id '" + ex.id + "' is not a valid token", {ex.id});
    if (!ids.insert(ex.id).second)
      throw Error(ErrorCategory::Validation, "DUPLICATE_EXERCISE",
                  "exercise '" + ex.id + "' declared more than once", {ex.id});
    if (ex.nodes.empty())
      throw Error(ErrorCategory::Validation, "EMPTY_COMPETENCY",
                  "exercise '" + ex.id + "' names no nodes", {ex.id});
    if (ex.kind == Exercise::Kind::NodeLocal && ex.nodes.size() != 1)
      throw Error(ErrorCategory::Validation, "INVALID_EXERCISE",
                  "node-local exercise '" + ex.id + "' must name exactly one node", {ex.id});
    for (const auto& n : ex.nodes)
      if (!g.find_node(n))
        throw Error(ErrorCategory::Validation, "UNKNOWN_NODE",
                    "exercise '" + ex.id + "' references unknown node '" + n + "'", {ex.id, n});
    if (ex.prompt_ref.empty() || has_space(ex.prompt_ref))
      throw Error(ErrorCategory::Validation, "MISSING_PROMPT",
                  "exercise '" + ex.id + "' needs a prompt token", {ex.id});
    if (ex.difficulty && (*ex.difficulty < 1 || *ex.difficulty > 5))
      throw Error(ErrorCategory::Validation, "INVALID_DIFFICULTY",
                  "exercise '" + ex.id + "' difficulty must be 1-5", {ex.id});
  }
}

Placement place_exercises(const Linearization& order, std::span<const Exercise> exercises) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.nodes.size(); ++i)
    pos.emplace(order.nodes[i], i);

  std::vector<std::vector<const Exercise*>> local(order.nodes.size());
  std::vector<std::vector<const Exercise*>> external(order.nodes.size());
  Placement out;
  for (const auto& ex : exercises) {
    if (ex.kind == Exercise::Kind::NodeLocal) {
      if (auto it = pos.find(ex.nodes.front()); it != pos.end())
        local[it->second].push_back(&ex);
      continue;
    }
    OmittedExercise omitted{ex.id, {}};
    std::size_t last = 0;
    for (const auto& n : ex.nodes) {
      auto it = pos.find(n);
      if (it == pos.end())
        omitted.missing.push_back(n);
      else
        last = std::max(last, it->second);
    }
    if (omitted.missing.empty())
      external[last].push_back(&ex);
    else
      out.omitted.push_back(std::move(omitted));
  }

  auto by_tie_rule = [](const Exercise* a, const Exercise* b) {
    return std::make_tuple(difficulty_key(*a), a->id) < std::make_tuple(difficulty_key(*b), b->id);
  };
  for (std::size_t i = 0; i < order.nodes.size(); ++i) {
    out.items.push_back({BookItem::Kind::Topic, order.nodes[i]});
    std::sort(local[i].begin(), local[i].end(), by_tie_rule);
    std::sort(external[i].begin(), external[i].end(), by_tie_rule);
    for (const auto* ex : local[i])
      out.items.push_back({BookItem::Kind::Exercise, ex->id});
    for (const auto* ex : external[i])
      out.items.push_back({BookItem::Kind::Exercise, ex->id});
  }
  std::sort(out.omitted.begin(), out.omitted.end(),
            [](const auto& a, const auto& b) { return a.exercise < b.exercise; });
  return out;
}

void ContentStore::add(std::string token, ContentDoc doc) {
  docs_.insert_or_assign(std::move(token), std::move(doc));
}

std::optional<ContentDoc> ContentStore::find(const std::string& token) const {
  if (auto it = docs_.find(token); it != docs_.end())
    return it->second;
  constexpr std::string_view kForm = "form:";
  if (token.size() > kForm.size() && token.compare(0, kForm.size(), kForm) == 0) {
    auto word = token.substr(kForm.size());
    return ContentDoc{"Analyze: " + word,
                      "Identify the grammatical form of *" + word +
                          "* and the topics needed to understand it."};
  }
  return std::nullopt;
}

std::string_view to_string(AuthorRole role) {
  return role == AuthorRole::Teacher ? "teacher" : "student";
}

std::optional<AuthorRole> parse_author_role(std::string_view s) {
  if (s == "teacher")
    return AuthorRole::Teacher;
  if (s == "student")
    return AuthorRole::Student;
  return std::nullopt;
}

std::string plan_id(const GraphRef& graph, const Linearization& order,
                    std::span<const std::string> stubs, std::span<const Exercise> exercises) {
  std::vector<std::string> ex_ids;
  for (const auto& ex : exercises)
    ex_ids.push_back(ex.id);
  std::sort(ex_ids.begin(), ex_ids.end());
  std::vector<std::string> stub_list(stubs.begin(), stubs.end());
  std::string material = "graph\n" + graph.id + "\n" + graph.version + "\norder\n" +
                         text::join(order.nodes, "\n") + "\nstubs\n" + text::join(stub_list, "\n") +
                         "\nexercises\n" + text::join(ex_ids, "\n") + "\n";
  return "book-" + text::sha256_hex(material).substr(0, 16);
}

namespace {

/// Everything assemble_book does except resolving content.
BookPlan build_plan(const CurriculumGraph& g, const ClosureResult& closure,
                    const Linearization& order, std::span<const Exercise> exercises,
                    const PlanMeta& meta, std::span<const std::string> stubs) {
  auto check = is_valid_order(closure, order.nodes);
  if (!check.valid) {
    std::vector<std::string> ids;
    if (check.violated)
      ids = {check.violated->tail, check.violated->head};
    throw Error(ErrorCategory::Validation,
                check.defect == OrderDefect::EdgeViolation ? "ORDER_VIOLATION" : "ORDER_MISMATCH",
                "order does not serialize the closure: " + check.detail, ids);
  }
  validate_exercises(g, exercises);

  BookPlan plan;
  plan.graph = {g.discipline, g.version()};
  plan.title = meta.title;
  if (plan.title.empty()) {
    auto it = g.metadata.find("title");
    plan.title = it != g.metadata.end() ? it->second : g.discipline;
  }
  plan.closure = closure;
  plan.order = order;
  plan.exercises.assign(exercises.begin(), exercises.end());
  std::sort(plan.exercises.begin(), plan.exercises.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  auto placement = place_exercises(order, plan.exercises);
  plan.items = std::move(placement.items);
  plan.omitted = std::move(placement.omitted);
  plan.stubs.assign(stubs.begin(), stubs.end());
  std::sort(plan.stubs.begin(), plan.stubs.end());
  plan.created_at = meta.created_at;
  plan.author_role = meta.author_role;
  plan.id = plan_id(plan.graph, plan.order, plan.stubs, plan.exercises);
  return plan;
}

std::vector<std::string> missing_content(const CurriculumGraph& g, const BookPlan& plan,
                                         const ContentStore& content) {
  std::set<std::string> missing;
  for (const auto& id : plan.order.nodes) {
    const auto* node = g.find_node(id);
    if (node && !node->content_ref.empty() && !content.contains(node->content_ref))
      missing.insert(node->content_ref);
  }
  std::set<std::string> placed;
  for (const auto& item : plan.items)
    if (item.kind == BookItem::Kind::Exercise)
      placed.insert(item.ref);
  for (const auto& ex : plan.exercises)
    if (placed.count(ex.id) && !content.contains(ex.prompt_ref))
      missing.insert(ex.prompt_ref);
  return {missing.begin(), missing.end()};
}

} // namespace

BookPlan assemble_book(const CurriculumGraph& g, const ClosureResult& closure,
                       const Linearization& order, std::span<const Exercise> exercises,
                       const ContentStore& content, const PlanMeta& meta,
                       std::span<const std::string> stubs) {
  auto plan = build_plan(g, closure, order, exercises, meta, stubs);
  auto missing = missing_content(g, plan, content);
  if (!missing.empty())
    throw Error(ErrorCategory::Validation, "MISSING_CONTENT",
                "unresolved content token(s): " + text::join(missing, ", "), missing);
  return plan;
}

namespace {

std::string anchor(const std::string& id) {
  std::string a = "topic-";
  for (char c : id)
    a += (c == ':') ? '-' : c;
  return a;
}

std::string topic_title(const CurriculumGraph& g, const std::string& id,
                        const ContentStore& content) {
  const auto* node = g.find_node(id);
  if (!node)
    throw Error(ErrorCategory::Validation, "UNKNOWN_NODE", "unknown node '" + id + "'", {id});
  if (!node->content_ref.empty())
    if (auto doc = content.find(node->content_ref); doc && !doc->title.empty())
      return doc->title;
  return node->title.empty() ? id : node->title;
}

void quote_block(std::ostringstream& out, std::string_view body) {
  for (auto line : text::split(text::trim(body), '\n')) {
    auto t = text::trim(line);
    out << (t.empty() ? ">" : "> " + std::string(line)) << "\n";
  }
}

} // namespace

std::string render_book(const CurriculumGraph& g, const BookPlan& plan,
                        const ContentStore& content) {
  std::map<std::string, const Exercise*> exercises;
  for (const auto& ex : plan.exercises)
    exercises.emplace(ex.id, &ex);

  std::ostringstream out;
  out << "# " << plan.title << "\n\n";
  out << "- Plan: `" << plan.id << "`\n";
  out << "- Graph: `" << plan.graph.id << "` version " << plan.graph.version << "\n";
  out << "- Author: " << to_string(plan.author_role) << "\n";
  out << "- Created: " << text::iso8601(plan.created_at) << "\n";
  out << "- Targets: "
      << text::join({plan.closure.targets.begin(), plan.closure.targets.end()}, ", ") << "\n";
  std::size_t placed = 0;
  for (const auto& item : plan.items)
    placed += item.kind == BookItem::Kind::Exercise;
  out << "- Topics: " << plan.order.nodes.size() << "; exercises: " << placed << "\n\n";

  out << "## Contents\n\n";
  for (std::size_t i = 0; i < plan.order.nodes.size(); ++i) {
    const auto& id = plan.order.nodes[i];
    out << i + 1 << ". [" << topic_title(g, id, content) << "](#" << anchor(id) << ")\n";
  }
  out << "\n";

  if (!plan.stubs.empty()) {
    out << "## Already mastered\n\n";
    out << "These prerequisites are cited for reference and not taught again.\n\n";
    for (const auto& id : plan.stubs)
      out << "- " << topic_title(g, id, content) << " (`" << id << "`)\n";
    out << "\n";
  }

  std::size_t section = 0;
  for (const auto& item : plan.items) {
    if (item.kind == BookItem::Kind::Topic) {
      const auto* node = g.find_node(item.ref);
      out << "<a id=\"" << anchor(item.ref) << "\"></a>\n\n";
      out << "## " << ++section << ". " << topic_title(g, item.ref, content) << "\n\n";
      std::optional<ContentDoc> doc;
      if (node && !node->content_ref.empty())
        doc = content.find(node->content_ref);
      if (!doc && node && !node->content_ref.empty())
        throw Error(ErrorCategory::Validation, "MISSING_CONTENT",
                    "unresolved content token: " + node->content_ref, {node->content_ref});
      auto body = doc ? text::trim(doc->body) : std::string_view{};
      if (body.empty())
        out << "_No content attached._\n\n";
      else
        out << body << "\n\n";
      continue;
    }
    auto it = exercises.find(item.ref);
    if (it == exercises.end())
      throw Error(ErrorCategory::Validation, "UNKNOWN_EXERCISE",
                  "plan places unknown exercise '" + item.ref + "'", {item.ref});
    const auto& ex = *it->second;
    auto prompt = content.find(ex.prompt_ref);
    if (!prompt)
      throw Error(ErrorCategory::Validation, "MISSING_CONTENT",
                  "unresolved content token: " + ex.prompt_ref, {ex.prompt_ref});
    out << "> **Exercise `" << ex.id << "`** ";
    if (ex.kind == Exercise::Kind::NodeLocal)
      out << "[NodeLocal: " << ex.nodes.front() << "]";
    else
      out << "[External: " << text::join(ex.nodes, ", ") << "]";
    if (ex.difficulty)
      out << " difficulty " << *ex.difficulty;
    out << "\n>\n";
    if (!prompt->title.empty())
      out << "> *" << prompt->title << "*\n>\n";
    quote_block(out, prompt->body);
    out << "\n";
  }

  if (!plan.omitted.empty()) {
    out << "## Appendix: omitted exercises\n\n";
    for (const auto& om : plan.omitted)
      out << "- `" << om.exercise << "`: needs " << text::join(om.missing, ", ")
          << ", not covered by this book\n";
    out << "\n";
  }
  return out.str();
}

std::string write_plan_manifest(const BookPlan& plan) {
  std::ostringstream out;
  out << "plan " << plan.id << "\n";
  out << "graph " << plan.graph.id << " " << plan.graph.version << "\n";
  out << "title " << plan.title << "\n";
  out << "author " << to_string(plan.author_role) << "\n";
  out << "created " << plan.created_at << "\n";
  for (const auto& t : plan.closure.targets)
    out << "target " << t << "\n";
  for (const auto& n : plan.closure.nodes)
    out << "node " << n << "\n";
  for (const auto& [gid, edge] : plan.closure.resolved_groups)
    out << "choice " << gid << " " << edge.tail << "\n";
  out << "order " << text::join(plan.order.nodes, " ") << "\n";
  for (const auto& s : plan.stubs)
    out << "stub " << s << "\n";
  for (const auto& ex : plan.exercises) {
    out << "exercise " << ex.id << " "
        << (ex.kind == Exercise::Kind::NodeLocal ? "local " : "external ")
        << text::join(ex.nodes, ",") << " prompt " << ex.prompt_ref << " difficulty "
        << (ex.difficulty ? std::to_string(*ex.difficulty) : "-") << "\n";
  }
  for (const auto& item : plan.items)
    out << "item " << (item.kind == BookItem::Kind::Topic ? "topic " : "exercise ") << item.ref
        << "\n";
  for (const auto& om : plan.omitted)
    out << "omitted " << om.exercise << " " << text::join(om.missing, ",") << "\n";
  return out.str();
}

BookPlan parse_plan_manifest(std::string_view content, const CurriculumGraph& g) {
  BookPlan plan;
  std::set<std::string> targets, nodes;
  std::map<std::string, std::string> choices;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split_ws(line);
    auto fail = [&](const std::string& why) {
      return Error(ErrorCategory::Validation, "PLAN_SYNTAX",
                   "plan line " + std::to_string(line_no) + ": " + why);
    };
    const auto key = f[0];
    auto rest = [&]() { return std::string(text::trim(line.substr(key.size()))); };
    if (key == "plan" && f.size() == 2) {
      plan.id = f[1];
    } else if (key == "graph" && f.size() == 3) {
      plan.graph = {std::string(f[1]), std::string(f[2])};
    } else if (key == "title") {
      plan.title = rest();
    } else if (key == "author" && f.size() == 2) {
      auto role = parse_author_role(f[1]);
      if (!role)
        throw fail("unknown author role");
      plan.author_role = *role;
    } else if (key == "created" && f.size() == 2) {
      auto v = text::parse_int(f[1]);
      if (!v)
        throw fail("bad timestamp");
      plan.created_at = *v;
    } else if (key == "target" && f.size() == 2) {
      targets.emplace(f[1]);
    } else if (key == "node" && f.size() == 2) {
      nodes.emplace(f[1]);
    } else if (key == "choice" && f.size() == 3) {
      choices.emplace(f[1], f[2]);
    } else if (key == "order") {
      for (std::size_t i = 1; i < f.size(); ++i)
        plan.order.nodes.emplace_back(f[i]);
    } else if (key == "stub" && f.size() == 2) {
      plan.stubs.emplace_back(f[1]);
    } else if (key == "exercise" && f.size() == 8 && f[4] == "prompt" && f[6] == "difficulty") {
      Exercise ex;
      ex.id = f[1];
      if (f[2] == "local")
        ex.kind = Exercise::Kind::NodeLocal;
      else if (f[2] == "external")
        ex.kind = Exercise::Kind::External;
      else
        throw fail("unknown exercise kind");
      ex.nodes = text::split_list(f[3]);
      ex.prompt_ref = f[5];
      if (f[7] != "-") {
        auto d = text::parse_int(f[7]);
        if (!d)
          throw fail("bad difficulty");
        ex.difficulty = static_cast<int>(*d);
      }
      plan.exercises.push_back(std::move(ex));
    } else if (key == "item" && f.size() == 3) {
      if (f[1] == "topic")
        plan.items.push_back({BookItem::Kind::Topic, std::string(f[2])});
      else if (f[1] == "exercise")
        plan.items.push_back({BookItem::Kind::Exercise, std::string(f[2])});
      else
        throw fail("unknown item kind");
    } else if (key == "omitted" && f.size() == 3) {
      plan.omitted.push_back({std::string(f[1]), text::split_list(f[2])});
    } else {
      throw fail("unrecognized declaration '" + std::string(key) + "'");
    }
  }
  if (plan.graph.id != g.discipline || plan.graph.version != g.version())
    throw Error(ErrorCategory::Validation, "GRAPH_VERSION_MISMATCH",
                "plan pins graph " + plan.graph.id + " version " + plan.graph.version,
                {plan.graph.id, plan.graph.version});
  GraphIndex idx(g);
  std::map<std::string, PrerequisiteEdge> resolved;
  for (const auto& [gid, tail] : choices) {
    const auto& members = idx.members(gid);
    auto it = std::find_if(members.begin(), members.end(),
                           [&](std::size_t m) { return idx.edge(m).tail == tail; });
    if (it == members.end())
      throw Error(ErrorCategory::Validation, "INVALID_CHOICE",
                  "plan choice '" + tail + "' is not a member of group '" + gid + "'", {gid, tail});
    resolved.emplace(gid, idx.edge(*it));
  }
  for (const auto& n : nodes)
    idx.at(n);
  plan.closure = make_closure(g, std::move(targets), std::move(nodes), resolved);
  return plan;
}

std::string_view to_string(Mastery m) {
  switch (m) {
  case Mastery::Unseen:
    return "unseen";
  case Mastery::InProgress:
    return "in_progress";
  case Mastery::Mastered:
    return "mastered";
  case Mastery::Gap:
    return "gap";
  }
  return "unseen";
}

std::optional<Mastery> parse_mastery(std::string_view s) {
  if (s == "unseen")
    return Mastery::Unseen;
  if (s == "in_progress")
    return Mastery::InProgress;
  if (s == "mastered")
    return Mastery::Mastered;
  if (s == "gap")
    return Mastery::Gap;
  return std::nullopt;
}

Mastery ProgressRecord::status_of(const std::string& node) const {
  auto it = statuses.find(node);
  return it == statuses.end() ? Mastery::Unseen : it->second.status;
}

ProgressRecord update_progress(ProgressRecord record, const CurriculumGraph& g,
                               const std::string& node, Mastery status, std::int64_t now) {
  if (!g.find_node(node))
    throw Error(ErrorCategory::Validation, "UNKNOWN_NODE", "unknown node '" + node + "'", {node});
  if (record.graph.empty())
    record.graph = g.discipline;
  else if (record.graph != g.discipline)
    throw Error(ErrorCategory::Validation, "GRAPH_MISMATCH",
                "progress of '" + record.student + "' tracks graph '" + record.graph + "'",
                {record.graph, g.discipline});
  record.statuses[node] = {status, now};
  return record;
}

std::string write_progress(const ProgressRecord& record) {
  std::ostringstream out;
  out << "student " << record.student << "\n";
  out << "graph " << record.graph << "\n";
  for (const auto& [node, entry] : record.statuses)
    out << "status " << node << " " << to_string(entry.status) << " " << entry.updated_at << "\n";
  return out.str();
}

ProgressRecord parse_progress(std::string_view content) {
  ProgressRecord record;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split_ws(line);
    auto fail = [&](const std::string& why) {
      return Error(ErrorCategory::Validation, "PROGRESS_SYNTAX",
                   "progress line " + std::to_string(line_no) + ": " + why);
    };
    if (f[0] == "student" && f.size() == 2) {
      record.student = f[1];
    } else if (f[0] == "graph" && f.size() == 2) {
      record.graph = f[1];
    } else if (f[0] == "status" && (f.size() == 3 || f.size() == 4)) {
      auto m = parse_mastery(f[2]);
      if (!m)
        throw fail("unknown status '" + std::string(f[2]) + "'");
      std::int64_t at = 0;
      if (f.size() == 4) {
        auto v = text::parse_int(f[3]);
        if (!v)
          throw fail("bad timestamp");
        at = *v;
      }
      record.statuses[std::string(f[1])] = {*m, at};
    } else {
      throw fail("expected 'student', 'graph' or 'status' declaration");
    }
  }
  return record;
}

ReviewPlan review_book(const CurriculumGraph& g, const ProgressRecord& progress,
                       const std::set<std::string>& gap_targets, const ReviewOptions& options) {
  if (gap_targets.empty())
    throw Error(ErrorCategory::Validation, "EMPTY_TARGETS", "at least one gap is required");
  for (const auto& t : gap_targets) {
    if (!g.find_node(t))
      throw Error(ErrorCategory::Validation, "UNKNOWN_NODE", "unknown node '" + t + "'", {t});
    if (options.override_status)
      continue;
    auto status = progress.status_of(t);
    if (status == Mastery::Mastered)
      throw Error(ErrorCategory::Constraint, "TARGET_MASTERED",
                  "'" + t + "' is already mastered; pass the override to review it anyway", {t});
    if (status != Mastery::Gap)
      throw Error(ErrorCategory::Constraint, "NOT_A_GAP",
                  "'" + t + "' is marked " + std::string(to_string(status)) + ", not gap", {t});
  }

  auto full = predecessor_closure(g, gap_targets, options.policy);
  std::set<std::string> retained;
  for (const auto& n : full.nodes)
    if (gap_targets.count(n) || progress.status_of(n) != Mastery::Mastered)
      retained.insert(n);

  // Edges the closure actually followed.
  auto obligation = [&](const PrerequisiteEdge& e) {
    if (e.grouped()) {
      auto it = full.resolved_groups.find(e.alt_group);
      return it != full.resolved_groups.end() && it->second == e;
    }
    return e.kind != EdgeKind::Optional || options.policy.include_optional;
  };
  std::set<std::string> stubs;
  for (const auto& e : full.induced_edges)
    if (obligation(e) && retained.count(e.head) && !retained.count(e.tail))
      stubs.insert(e.tail);

  ReviewPlan review;
  review.closure = make_closure(g, gap_targets, retained, full.resolved_groups);
  review.order = topological_order(review.closure);
  review.stubs.assign(stubs.begin(), stubs.end());
  return review;
}

std::vector<EditOp> parse_edit_ops(std::string_view content) {
  std::vector<EditOp> ops;
  for (auto line_raw : text::split(content, '\n')) {
    for (auto raw : text::split(line_raw, ';')) {
      auto line = text::trim(raw);
      if (line.empty() || line.front() == '#')
        continue;
      auto f = text::split_ws(line);
      auto bad = [&]() {
        return Error(ErrorCategory::Usage, "BAD_EDIT_OP",
                     "expected 'insert <node> <pos>', 'remove <node>' or 'move <node> <pos>', got '" +
                         std::string(line) + "'");
      };
      EditOp op;
      if (f[0] == "remove" && f.size() == 2) {
        op.kind = EditOp::Kind::Remove;
      } else if ((f[0] == "insert" || f[0] == "move") && f.size() == 3) {
        op.kind = f[0] == "insert" ? EditOp::Kind::Insert : EditOp::Kind::Move;
        auto p = text::parse_int(f[2]);
        if (!p || *p < 0)
          throw bad();
        op.position = static_cast<std::size_t>(*p);
      } else {
        throw bad();
      }
      op.node = f[1];
      ops.push_back(std::move(op));
    }
  }
  return ops;
}

EditOutcome edit_plan_in_itinere(const CurriculumGraph& g, const BookPlan& plan,
                                 std::span<const EditOp> ops, const ContentStore* content) {
  auto reject = [](std::string code, std::string message) {
    EditOutcome out;
    out.rejection = EditRejection{std::move(code), std::move(message), std::nullopt, {}};
    return out;
  };

  std::vector<std::string> order = plan.order.nodes;
  std::set<std::string> stubs(plan.stubs.begin(), plan.stubs.end());
  for (const auto& op : ops) {
    auto it = std::find(order.begin(), order.end(), op.node);
    switch (op.kind) {
    case EditOp::Kind::Insert:
      if (!g.find_node(op.node))
        return reject("INVALID_EDIT", "cannot insert unknown node '" + op.node + "'");
      if (it != order.end())
        return reject("INVALID_EDIT", "'" + op.node + "' is already in the book");
      if (op.position > order.size())
        return reject("INVALID_EDIT", "insert position out of range");
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(op.position), op.node);
      stubs.erase(op.node);
      break;
    case EditOp::Kind::Remove:
      if (it == order.end())
        return reject("INVALID_EDIT", "'" + op.node + "' is not in the book");
      order.erase(it);
      break;
    case EditOp::Kind::Move:
      if (it == order.end())
        return reject("INVALID_EDIT", "'" + op.node + "' is not in the book");
      order.erase(it);
      if (op.position > order.size())
        return reject("INVALID_EDIT", "move position out of range");
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(op.position), op.node);
      break;
    }
  }
  if (order.empty())
    return reject("INVALID_EDIT", "the edited book would be empty");

  std::set<std::string> nodes(order.begin(), order.end());
  std::set<std::string> present = nodes;
  present.insert(stubs.begin(), stubs.end());
  if (auto missing = first_missing_prerequisite(g, order, present)) {
    EditOutcome out;
    EditRejection r;
    r.code = "MISSING_PREREQUISITE";
    r.missing = missing->missing;
    r.edge = missing->edge;
    r.message = missing->group
                    ? "'" + missing->node + "' needs a member of group '" + missing->missing + "'"
                    : "'" + missing->node + "' needs prerequisite '" + missing->missing + "'";
    out.rejection = std::move(r);
    return out;
  }

  GraphIndex idx(g);
  std::map<std::string, PrerequisiteEdge> resolved;
  for (const auto& head : nodes) {
    for (const auto& gid : idx.groups_at(idx.at(head))) {
      auto prev = plan.closure.resolved_groups.find(gid);
      if (prev != plan.closure.resolved_groups.end() && present.count(prev->second.tail)) {
        resolved.emplace(gid, prev->second);
        continue;
      }
      for (auto m : idx.members(gid))
        if (present.count(idx.edge(m).tail)) {
          resolved.emplace(gid, idx.edge(m));
          break;
        }
    }
  }
  std::set<std::string> targets;
  for (const auto& t : plan.closure.targets)
    if (nodes.count(t))
      targets.insert(t);
  auto closure = make_closure(g, std::move(targets), nodes, resolved);

  auto check = is_valid_order(closure, order);
  if (!check.valid) {
    EditOutcome out;
    out.rejection = EditRejection{"ORDER_VIOLATION", check.detail, check.violated, {}};
    return out;
  }

  PlanMeta meta{plan.author_role, plan.created_at, plan.title};
  std::vector<std::string> stub_list(stubs.begin(), stubs.end());
  try {
    EditOutcome out;
    if (content)
      out.plan = assemble_book(g, closure, Linearization{order}, plan.exercises, *content, meta,
                               stub_list);
    else
      out.plan = build_plan(g, closure, Linearization{order}, plan.exercises, meta, stub_list);
    return out;
  } catch (const Error& e) {
    return reject(e.code(), e.what());
  }
}

} // namespace curriculum
