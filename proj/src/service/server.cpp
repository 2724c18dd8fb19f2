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
#include "service/server.hpp"

#include "core/ingest.hpp"
#include "core/text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>

namespace curriculum {

using nlohmann::json;

struct Service::Http {
  httplib::Server server;
};

namespace {

// ---- encoding --------------------------------------------------------------

json to_json(const PrerequisiteEdge& e) {
  json j = {{"tail", e.tail}, {"head", e.head}, {"kind", std::string(to_string(e.kind))}};
  if (e.grouped())
    j["group"] = e.alt_group;
  return j;
}

json to_json(const TopicNode& n) {
  json j = {{"id", n.id}, {"title", n.title}, {"duration_minutes", n.duration_minutes}};
  if (!n.cluster.empty())
    j["cluster"] = n.cluster;
  if (n.page_estimate)
    j["page_estimate"] = *n.page_estimate;
  if (!n.content_ref.empty())
    j["content_ref"] = n.content_ref;
  return j;
}

json to_json(const Finding& f) {
  json j = {{"code", f.code}, {"message", f.message}, {"ids", f.ids}};
  if (f.line > 0)
    j["line"] = f.line;
  return j;
}

json to_json(const ValidationReport& r) {
  json errors = json::array(), warnings = json::array();
  for (const auto& f : r.errors)
    errors.push_back(to_json(f));
  for (const auto& f : r.warnings)
    warnings.push_back(to_json(f));
  return {{"errors", errors}, {"warnings", warnings}};
}

json edges_json(const std::vector<PrerequisiteEdge>& edges) {
  json a = json::array();
  for (const auto& e : edges)
    a.push_back(to_json(e));
  return a;
}

json to_json(const ClosureResult& c) {
  json groups = json::object();
  for (const auto& [gid, e] : c.resolved_groups)
    groups[gid] = to_json(e);
  return {{"targets", c.targets},
          {"nodes", c.nodes},
          {"induced_edges", edges_json(c.induced_edges)},
          {"resolved_groups", groups},
          {"skipped_optional", edges_json(c.skipped_optional)}};
}

json to_json(const CurriculumGraph& g) {
  json nodes = json::array(), groups = json::array();
  for (const auto& n : g.nodes)
    nodes.push_back(to_json(n));
  for (const auto& [id, grp] : g.alt_groups)
    groups.push_back({{"id", id}, {"head", grp.head}});
  return {{"id", g.discipline},
          {"version", g.version()},
          {"metadata", g.metadata},
          {"nodes", nodes},
          {"edges", edges_json(g.edges)},
          {"groups", groups},
          {"native", write_native(g)}};
}

json to_json(const Exercise& ex) {
  json j = {{"id", ex.id},
            {"kind", ex.kind == Exercise::Kind::NodeLocal ? "local" : "external"},
            {"nodes", ex.nodes},
            {"prompt_ref", ex.prompt_ref}};
  if (ex.difficulty)
    j["difficulty"] = *ex.difficulty;
  return j;
}

json to_json(const BookPlan& p) {
  json items = json::array(), omitted = json::array(), exercises = json::array();
  for (const auto& it : p.items)
    items.push_back({{"kind", it.kind == BookItem::Kind::Topic ? "topic" : "exercise"},
                     {"ref", it.ref}});
  for (const auto& om : p.omitted)
    omitted.push_back({{"exercise", om.exercise}, {"missing", om.missing}});
  for (const auto& ex : p.exercises)
    exercises.push_back(to_json(ex));
  return {{"id", p.id},
          {"graph", {{"id", p.graph.id}, {"version", p.graph.version}}},
          {"title", p.title},
          {"author_role", std::string(to_string(p.author_role))},
          {"created_at", p.created_at},
          {"closure", to_json(p.closure)},
          {"order", p.order.nodes},
          {"stubs", p.stubs},
          {"items", items},
          {"exercises", exercises},
          {"omitted", omitted},
          {"manifest", write_plan_manifest(p)}};
}

json to_json(const ProgressRecord& r) {
  json statuses = json::object();
  for (const auto& [node, e] : r.statuses)
    statuses[node] = {{"status", std::string(to_string(e.status))}, {"updated_at", e.updated_at}};
  return {{"student", r.student}, {"graph", r.graph}, {"statuses", statuses}};
}

HttpResponse reply(int status, const json& body) {
  return {status, "application/json", body.dump(2) + "\n"};
}

HttpResponse error_reply(int status, const std::string& code, const std::string& message,
                         const std::vector<std::string>& ids = {}, json extra = json::object()) {
  json body = {{"code", code}, {"message", message}, {"ids", ids}};
  for (auto& [k, v] : extra.items())
    body[k] = v;
  return reply(status, body);
}

int status_for(const Error& e) {
  if (e.code() == "NOT_FOUND")
    return 404;
  switch (e.category()) {
  case ErrorCategory::Usage:
  case ErrorCategory::Validation:
    return 400;
  case ErrorCategory::Constraint:
    return 409;
  case ErrorCategory::Io:
  case ErrorCategory::Internal:
    return 500;
  }
  return 500;
}

// ---- request decoding ------------------------------------------------------

Error bad_request(const std::string& message) {
  return Error(ErrorCategory::Usage, "BAD_REQUEST", message);
}

json parse_body(const std::string& body) {
  if (text::trim(body).empty())
    return json::object();
  try {
    auto j = json::parse(body);
    if (!j.is_object())
      throw bad_request("request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCategory::Usage, "BAD_JSON", std::string("malformed JSON: ") + e.what());
  }
}

std::string need_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw bad_request(std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required)
      throw bad_request(std::string("field '") + key + "' is required");
    return {};
  }
  if (j[key].is_string())
    return text::split_list(j[key].get<std::string>());
  if (!j[key].is_array())
    throw bad_request(std::string("field '") + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string())
      throw bad_request(std::string("field '") + key + "' must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::optional<int> optional_version(const json& j) {
  if (!j.contains("version"))
    return std::nullopt;
  if (j["version"].is_number_integer())
    return j["version"].get<int>();
  if (j["version"].is_string())
    if (auto v = text::parse_int(j["version"].get<std::string>()))
      return static_cast<int>(*v);
  throw bad_request("field 'version' must be an integer");
}

ClosurePolicy policy_from(const json& j) {
  bool include_optional = j.value("include_optional", false);
  auto mode = j.value("policy", std::string("explicit"));
  if (mode == "minimal")
    return ClosurePolicy::minimal(include_optional);
  if (mode == "preferred")
    return ClosurePolicy::prefer(string_list(j, "preferred", true), include_optional);
  if (mode != "explicit")
    throw bad_request("policy must be 'explicit', 'minimal' or 'preferred'");
  std::map<std::string, std::string> choices;
  if (j.contains("choices")) {
    if (!j["choices"].is_object())
      throw bad_request("field 'choices' must map group ids to member tails");
    for (const auto& [gid, tail] : j["choices"].items()) {
      if (!tail.is_string())
        throw bad_request("choice for '" + gid + "' must be a string");
      choices[gid] = tail.get<std::string>();
    }
  }
  return ClosurePolicy::explicit_choices(std::move(choices), include_optional);
}

ClosureResult closure_from(const CurriculumGraph& g, const json& j) {
  auto targets = string_list(j, "targets", true);
  return predecessor_closure(g, {targets.begin(), targets.end()}, policy_from(j));
}

RankingWeights weights_from(const json& j) {
  RankingWeights w;
  if (!j.contains("weights"))
    return w;
  const auto& wj = j["weights"];
  if (wj.is_array() && wj.size() == 3) {
    w = {wj[0].get<double>(), wj[1].get<double>(), wj[2].get<double>()};
  } else if (wj.is_object()) {
    w.time = wj.value("time", 1.0);
    w.popularity = wj.value("popularity", 1.0);
    w.coherence = wj.value("coherence", 1.0);
  } else {
    throw bad_request("weights must be [t, p, c] or {time, popularity, coherence}");
  }
  w.check();
  return w;
}

std::vector<EditOp> ops_from(const json& j) {
  if (!j.contains("ops"))
    throw bad_request("field 'ops' is required");
  if (j["ops"].is_string())
    return parse_edit_ops(j["ops"].get<std::string>());
  if (!j["ops"].is_array())
    throw bad_request("ops must be a list or an edit script");
  std::vector<EditOp> ops;
  for (const auto& o : j["ops"]) {
    EditOp op;
    auto kind = need_string(o, "op");
    op.node = need_string(o, "node");
    if (kind == "insert" || kind == "move") {
      op.kind = kind == "insert" ? EditOp::Kind::Insert : EditOp::Kind::Move;
      if (!o.contains("position") || !o["position"].is_number_unsigned())
        throw bad_request("op '" + kind + "' needs a non-negative 'position'");
      op.position = o["position"].get<std::size_t>();
    } else if (kind == "remove") {
      op.kind = EditOp::Kind::Remove;
    } else {
      throw bad_request("unknown op '" + kind + "'");
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  for (auto part : text::split(path, '/'))
    if (!part.empty())
      out.emplace_back(part);
  return out;
}

// ---- handlers --------------------------------------------------------------

class Router {
public:
  explicit Router(Workspace& ws) : ws_(ws) {}

  HttpResponse route(const std::string& method, const std::vector<std::string>& p,
                     const std::string& body, const std::map<std::string, std::string>& query) {
    auto n = p.size();
    auto is = [&](std::size_t i, const char* s) { return i < n && p[i] == s; };
    std::optional<int> qversion;
    if (auto it = query.find("version"); it != query.end()) {
      auto v = text::parse_int(it->second);
      if (!v)
        throw bad_request("query 'version' must be an integer");
      qversion = static_cast<int>(*v);
    }

    if (method == "GET" && n == 1 && is(0, "health"))
      return reply(200, {{"status", "ok"}});
    if (is(0, "graphs")) {
      if (n == 1 && method == "GET")
        return list_graphs();
      if (n == 1 && method == "POST")
        return upload_graph(body, query);
      if (n == 2 && p[1] == "merge" && method == "POST")
        return merge(parse_body(body));
      if (n == 2 && method == "GET")
        return reply(200, to_json(*ws_.graph(p[1], qversion)));
      if (n == 4 && is(2, "nodes") && method == "GET")
        return node(p[1], p[3], qversion);
      if (n == 3 && is(2, "closure") && method == "POST")
        return closure(p[1], parse_body(body));
      if (n == 3 && is(2, "linearizations") && method == "POST")
        return linearizations(p[1], parse_body(body));
    }
    if (is(0, "books")) {
      if (n == 1 && method == "POST")
        return create_book(parse_body(body));
      if (n == 1 && method == "GET")
        return reply(200, {{"books", ws_.plan_ids()}});
      if (n == 2 && method == "GET")
        return reply(200, to_json(ws_.plan(p[1])));
      if (n == 3 && is(2, "render") && method == "GET")
        return render(p[1]);
      if (n == 3 && is(2, "edits") && method == "POST")
        return edit(p[1], parse_body(body));
    }
    if (is(0, "students") && n >= 3) {
      if (n == 4 && is(2, "progress") && method == "PUT")
        return put_progress(p[1], p[3], parse_body(body));
      if (n == 3 && is(2, "progress") && method == "GET")
        return reply(200, to_json(ws_.progress(p[1])));
      if (n == 3 && is(2, "review") && method == "POST")
        return review(p[1], parse_body(body));
    }
    if (is(0, "analyzer") && n == 2 && method == "POST") {
      if (p[1] == "lookup")
        return lookup(parse_body(body));
      if (p[1] == "exercises")
        return analyzer_exercises(parse_body(body));
    }
    return error_reply(404, "NOT_FOUND", "no route for " + method + " /" + text::join(p, "/"));
  }

private:
  Workspace& ws_;

  HttpResponse list_graphs() {
    json a = json::array();
    for (const auto& s : ws_.graphs())
      a.push_back({{"id", s.id},
                   {"version", s.version},
                   {"versions", s.versions},
                   {"nodes", s.nodes},
                   {"edges", s.edges}});
    return reply(200, {{"graphs", a}});
  }

  HttpResponse upload_graph(const std::string& body,
                            const std::map<std::string, std::string>& query) {
    CurriculumGraph g;
    ValidationReport report;
    auto head = text::trim(body);
    if (!head.empty() && head.front() == '<') {
      GraphMLOptions opts;
      if (auto it = query.find("discipline"); it != query.end())
        opts.discipline = it->second;
      auto colors = ColorMap::defaults();
      if (auto it = query.find("colors"); it != query.end())
        colors = ColorMap::parse(it->second);
      auto imported = import_graphml(body, colors, opts);
      g = std::move(imported.graph);
      report.warnings = std::move(imported.warnings);
    } else {
      auto doc = parse_native(body);
      if (!doc.report.ok())
        throw InvalidGraphError(std::move(doc.report));
      g = std::move(doc.graph);
      report = std::move(doc.report);
    }
    auto stored = ws_.store_graph(std::move(g));
    for (auto& w : stored.report.warnings)
      if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end())
        report.warnings.push_back(w);
    return reply(201, {{"id", stored.id}, {"version", stored.version}, {"report", to_json(report)}});
  }

  HttpResponse node(const std::string& gid, const std::string& nid, std::optional<int> version) {
    auto g = ws_.graph(gid, version);
    const auto* n = g->find_node(nid);
    if (!n)
      return error_reply(404, "NOT_FOUND", "node '" + nid + "' not found", {nid});
    return reply(200, {{"node", to_json(*n)},
                       {"predecessors", edges_json(direct_predecessors(*g, nid))},
                       {"successors", edges_json(direct_successors(*g, nid))}});
  }

  HttpResponse closure(const std::string& gid, const json& j) {
    auto g = ws_.graph(gid, optional_version(j));
    return reply(200, to_json(closure_from(*g, j)));
  }

  HttpResponse linearizations(const std::string& gid, const json& j) {
    auto g = ws_.graph(gid, optional_version(j));
    auto spec = j.contains("closure") ? j["closure"] : j;
    auto c = closure_from(*g, spec);
    auto cap = j.value("cap", static_cast<std::int64_t>(kDefaultEnumerationCap));
    if (cap < 1)
      throw Error(ErrorCategory::Usage, "INVALID_CAP", "cap must be positive");
    auto set = all_linearizations(c, static_cast<std::size_t>(cap));
    auto count = count_linearizations(c);
    auto ranked = rank_orderings(std::move(set.orders), *g, weights_from(j), ws_.popularity());
    json orderings = json::array();
    for (const auto& r : ranked)
      orderings.push_back({{"nodes", r.order.nodes},
                           {"score",
                            {{"time", r.score.time},
                             {"popularity", r.score.popularity},
                             {"coherence", r.score.coherence},
                             {"total", r.score.total}}}});
    return reply(200, {{"closure", to_json(c)},
                       {"orderings", orderings},
                       {"truncated", set.truncated},
                       {"count", {{"value", count.count}, {"exact", count.exact}}}});
  }

  std::shared_ptr<const CurriculumGraph> current_graph(const json& j) {
    auto gid = need_string(j, "graph");
    auto version = optional_version(j);
    auto latest = ws_.latest_version(gid);
    if (version && latest && *version < latest)
      throw Error(ErrorCategory::Constraint, "STALE_GRAPH_VERSION",
                  "graph '" + gid + "' version " + std::to_string(*version) +
                      " is superseded by version " + std::to_string(latest),
                  {gid});
    return ws_.graph(gid, version);
  }

  std::vector<Exercise> pick_exercises(const std::string& gid, const json& j) {
    auto pool = ws_.exercises(gid);
    if (!j.contains("exercises"))
      return pool;
    std::vector<Exercise> out;
    for (const auto& id : string_list(j, "exercises", true)) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& e) { return e.id == id; });
      if (it == pool.end())
        throw Error(ErrorCategory::Validation, "UNKNOWN_EXERCISE",
                    "exercise '" + id + "' is not in the pool of '" + gid + "'", {id});
      out.push_back(*it);
    }
    return out;
  }

  PlanMeta meta_from(const json& j, AuthorRole fallback) {
    PlanMeta meta;
    meta.author_role = fallback;
    if (j.contains("author_role")) {
      auto role = parse_author_role(need_string(j, "author_role"));
      if (!role)
        throw bad_request("author_role must be 'teacher' or 'student'");
      meta.author_role = *role;
    }
    meta.title = j.value("title", std::string());
    meta.created_at = j.value("created_at", ws_.now());
    return meta;
  }

  HttpResponse create_book(const json& j) {
    auto g = current_graph(j);
    if (!j.contains("closure") || !j["closure"].is_object())
      throw bad_request("field 'closure' must be a closure request");
    auto c = closure_from(*g, j["closure"]);
    Linearization order = j.contains("order") ? Linearization{string_list(j, "order", true)}
                                              : topological_order(c);
    auto exercises = pick_exercises(g->discipline, j);
    auto plan = assemble_book(*g, c, order, exercises, ws_.content(),
                              meta_from(j, AuthorRole::Teacher));
    auto saved = ws_.save_plan(plan, true);
    auto body = to_json(saved.plan);
    body["created"] = saved.created;
    return reply(saved.created ? 201 : 200, body);
  }

  HttpResponse render(const std::string& id) {
    auto plan = ws_.plan(id);
    auto g = ws_.graph(plan.graph.id, static_cast<int>(text::parse_int(plan.graph.version).value_or(0)));
    return {200, "text/markdown; charset=utf-8", render_book(*g, plan, ws_.content())};
  }

  HttpResponse edit(const std::string& id, const json& j) {
    auto plan = ws_.plan(id);
    auto g = ws_.graph(plan.graph.id, static_cast<int>(text::parse_int(plan.graph.version).value_or(0)));
    auto ops = ops_from(j);
    auto outcome = edit_plan_in_itinere(*g, plan, ops, &ws_.content());
    if (!outcome.accepted()) {
      const auto& r = *outcome.rejection;
      json extra = json::object();
      if (r.edge)
        extra["edge"] = to_json(*r.edge);
      if (!r.missing.empty())
        extra["missing"] = r.missing;
      int status = r.code == "ORDER_VIOLATION" || r.code == "MISSING_PREREQUISITE" ? 409 : 400;
      std::vector<std::string> ids;
      if (r.edge)
        ids = {r.edge->tail, r.edge->head};
      else if (!r.missing.empty())
        ids = {r.missing};
      return error_reply(status, r.code, r.message, ids, extra);
    }
    auto saved = ws_.save_plan(*outcome.plan, false);
    auto body = to_json(saved.plan);
    body["previous"] = id;
    return reply(200, body);
  }

  HttpResponse put_progress(const std::string& sid, const std::string& nid, const json& j) {
    auto status = parse_mastery(need_string(j, "status"));
    if (!status)
      throw bad_request("status must be unseen, in_progress, mastered or gap");
    auto record = ws_.update_progress(sid, need_string(j, "graph"), nid, *status);
    return reply(200, to_json(record));
  }

  HttpResponse review(const std::string& sid, const json& j) {
    auto gid = need_string(j, "graph");
    auto g = ws_.graph(gid);
    auto progress = ws_.progress(sid);
    if (!progress.graph.empty() && progress.graph != gid)
      throw Error(ErrorCategory::Validation, "GRAPH_MISMATCH",
                  "progress of '" + sid + "' tracks graph '" + progress.graph + "'", {gid});
    auto gaps = string_list(j, "gaps", true);
    ReviewOptions options;
    options.policy = policy_from(j);
    options.override_status = j.value("override", false);
    auto r = review_book(*g, progress, {gaps.begin(), gaps.end()}, options);
    json body = {{"closure", to_json(r.closure)}, {"order", r.order.nodes}, {"stubs", r.stubs}};
    if (j.value("assemble", false)) {
      std::vector<Exercise> exercises;
      for (auto& ex : pick_exercises(gid, j))
        exercises.push_back(std::move(ex));
      auto plan = assemble_book(*g, r.closure, r.order, exercises, ws_.content(),
                                meta_from(j, AuthorRole::Student), r.stubs);
      auto saved = ws_.save_plan(plan, false);
      body["plan"] = to_json(saved.plan);
    }
    return reply(200, body);
  }

  HttpResponse merge(const json& j) {
    if (!j.contains("graphs") || !j["graphs"].is_array())
      throw bad_request("field 'graphs' must list graph ids");
    std::vector<CurriculumGraph> inputs;
    for (const auto& ref : j["graphs"]) {
      if (ref.is_string())
        inputs.push_back(*ws_.graph(ref.get<std::string>()));
      else if (ref.is_object())
        inputs.push_back(*ws_.graph(need_string(ref, "id"), optional_version(ref)));
      else
        throw bad_request("graph references must be ids or {id, version}");
    }
    std::vector<CrossEdge> cross;
    if (j.contains("cross")) {
      if (j["cross"].is_string()) {
        cross = parse_cross_edges(j["cross"].get<std::string>());
      } else if (j["cross"].is_array()) {
        for (const auto& c : j["cross"])
          cross.push_back({need_string(c, "tail"), need_string(c, "head")});
      } else {
        throw bad_request("cross must be a list of {tail, head}");
      }
    }
    MergeOptions options;
    options.discipline = j.value("discipline", std::string());
    auto merged = merge_graphs(inputs, cross, options);
    auto nodes = merged.nodes.size(), edges = merged.edges.size();
    auto stored = ws_.store_graph(std::move(merged));
    return reply(201, {{"id", stored.id},
                       {"version", stored.version},
                       {"nodes", nodes},
                       {"edges", edges},
                       {"report", to_json(stored.report)}});
  }

  TagIndex index_for(const std::string& gid, const json& j) {
    if (j.contains("index"))
      return parse_tag_index(need_string(j, "index"));
    auto index = ws_.tags(gid);
    if (!index)
      throw Error(ErrorCategory::Io, "NOT_FOUND", "no tag index for graph '" + gid + "'", {gid});
    return *index;
  }

  HttpResponse lookup(const json& j) {
    auto gid = need_string(j, "graph");
    auto g = ws_.graph(gid);
    auto tags = string_list(j, "tags", true);
    auto r = competency_lookup(index_for(gid, j), tags, *g);
    return reply(200, {{"tags", r.tags},
                       {"direct_nodes", r.direct_nodes},
                       {"unknown_tags", r.unknown_tags},
                       {"closure", to_json(r.closure)}});
  }

  HttpResponse analyzer_exercises(const json& j) {
    auto gid = need_string(j, "graph");
    auto g = ws_.graph(gid);
    std::vector<AnalyzedForm> forms;
    if (j.contains("export")) {
      forms = parse_analyzer_export(need_string(j, "export"));
    } else if (j.contains("forms") && j["forms"].is_array()) {
      for (const auto& f : j["forms"])
        forms.push_back({need_string(f, "form"), string_list(f, "tags", true), 0});
    } else {
      throw bad_request("provide 'export' text or a 'forms' list");
    }
    auto outcomes = process_analyzer_export(index_for(gid, j), forms, *g, true);
    json list = json::array();
    std::vector<Exercise> made;
    for (const auto& o : outcomes) {
      json item = {{"form", o.form.form}, {"tags", o.form.tags}};
      if (o.report) {
        item["direct_nodes"] = o.report->direct_nodes;
        item["unknown_tags"] = o.report->unknown_tags;
      }
      if (o.exercise) {
        item["exercise"] = to_json(*o.exercise);
        made.push_back(*o.exercise);
      }
      if (!o.error.empty())
        item["error"] = o.error;
      list.push_back(std::move(item));
    }
    if (j.value("persist", true) && !made.empty())
      ws_.add_exercises(gid, made);
    return reply(200, {{"outcomes", list}, {"generated", made.size()}});
  }
};

} // namespace

Service::Service(std::shared_ptr<Workspace> workspace)
    : workspace_(std::move(workspace)), http_(std::make_unique<Http>()) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params)
      query.emplace(k, v);
    auto out = handle(req.method, req.path, req.body, query);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const char* pattern = R"(/.*)";
  http_->server.Get(pattern, forward);
  http_->server.Post(pattern, forward);
  http_->server.Put(pattern, forward);
  http_->server.Delete(pattern, forward);
}

Service::~Service() { stop(); }

HttpResponse Service::handle(const std::string& method, const std::string& path,
                             const std::string& body,
                             const std::map<std::string, std::string>& query) {
  Router router(*workspace_);
  try {
    return router.route(method, split_path(path), body, query);
  } catch (const InvalidGraphError& e) {
    return error_reply(400, e.code(), e.what(), e.ids(), {{"report", to_json(e.report())}});
  } catch (const UnresolvedChoiceError& e) {
    json points = json::array();
    for (const auto& cp : e.choice_points())
      points.push_back({{"group", cp.group},
                        {"head", cp.head},
                        {"members", edges_json(cp.members)},
                        {"closure_sizes", cp.closure_sizes}});
    return error_reply(409, e.code(), e.what(), e.ids(), {{"choice_points", points}});
  } catch (const SyntaxError& e) {
    return error_reply(400, e.code(), e.what(), e.ids(),
                       {{"line", e.line()}, {"column", e.column()}});
  } catch (const Error& e) {
    return error_reply(status_for(e), e.code(), e.what(), e.ids());
  } catch (const json::exception& e) {
    return error_reply(400, "BAD_REQUEST", e.what());
  } catch (const std::exception& e) {
    return error_reply(500, "INTERNAL", e.what());
  }
}

int Service::bind(const std::string& host, int port) {
  if (port == 0)
    return http_->server.bind_to_any_port(host);
  if (!http_->server.bind_to_port(host, port))
    throw Error(ErrorCategory::Io, "BIND_FAILED",
                "cannot listen on " + host + ":" + std::to_string(port));
  return port;
}

void Service::run() { http_->server.listen_after_bind(); }

void Service::stop() {
  if (http_)
    http_->server.stop();
}

} // namespace curriculum
