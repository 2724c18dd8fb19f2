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
#include "curriculum/curriculum.h"

#include "core/book.hpp"
#include "core/closure.hpp"
#include "core/ingest.hpp"
#include "core/interop.hpp"
#include "core/sequencing.hpp"
#include "core/text.hpp"
#include "service/server.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>

using namespace curriculum;

struct cg_graph {
  CurriculumGraph g;
};
struct cg_closure {
  ClosureResult c;
};
struct cg_popularity {
  PopularityStore p;
};
struct cg_content {
  ContentStore c;
};
struct cg_exercises {
  std::vector<Exercise> list;
};
struct cg_progress {
  ProgressRecord r;
};
struct cg_plan {
  BookPlan p;
};
struct cg_service {
  std::unique_ptr<Service> service;
};

namespace {

struct LastError {
  std::string code;
  std::string message;
  std::string detail;
};

thread_local LastError last_error;

cg_status fail(cg_status status, std::string code, std::string message, std::string detail = {}) {
  last_error = {std::move(code), std::move(message), std::move(detail)};
  return status;
}

cg_status status_of(ErrorCategory c) { return static_cast<cg_status>(static_cast<int>(c)); }

std::string finding_lines(const ValidationReport& r) {
  std::ostringstream out;
  auto emit = [&](const char* level, const Finding& f) {
    out << level << "\t" << f.code << "\t" << f.line << "\t" << text::join(f.ids, ",") << "\t"
        << f.message << "\n";
  };
  for (const auto& f : r.errors)
    emit("error", f);
  for (const auto& f : r.warnings)
    emit("warning", f);
  return out.str();
}

/// Runs `body`, translating exceptions into a status and the thread's last error.
template <typename F>
cg_status guard(F&& body) {
  try {
    body();
    last_error = {};
    return CG_OK;
  } catch (const InvalidGraphError& e) {
    return fail(status_of(e.category()), e.code(), e.what(), finding_lines(e.report()));
  } catch (const UnresolvedChoiceError& e) {
    std::ostringstream detail;
    for (const auto& cp : e.choice_points()) {
      detail << cp.group << "\t" << cp.head << "\t";
      for (std::size_t i = 0; i < cp.members.size(); ++i)
        detail << (i ? "," : "") << cp.members[i].tail << ":" << cp.closure_sizes[i];
      detail << "\n";
    }
    return fail(status_of(e.category()), e.code(), e.what(), detail.str());
  } catch (const Error& e) {
    return fail(status_of(e.category()), e.code(), e.what(), text::join(e.ids(), ","));
  } catch (const std::bad_alloc&) {
    return fail(CG_ERR_INTERNAL, "OUT_OF_MEMORY", "out of memory");
  } catch (const std::exception& e) {
    return fail(CG_ERR_INTERNAL, "INTERNAL", e.what());
  }
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p)
    throw Error(ErrorCategory::Usage, "NULL_ARGUMENT", std::string(what) + " must not be NULL");
}

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

std::map<std::string, std::string> parse_choices(const std::string& spec) {
  std::map<std::string, std::string> out;
  for (const auto& item : text::split_list(spec)) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw Error(ErrorCategory::Usage, "BAD_CHOICE",
                  "choice '" + item + "' must look like group=tail or group=tail->head");
    auto value = item.substr(eq + 1);
    // Accept an edge spelled tail->head; the tail identifies the member.
    if (auto arrow = value.find("->"); arrow != std::string::npos)
      value = std::string(text::trim(value.substr(0, arrow)));
    out[item.substr(0, eq)] = value;
  }
  return out;
}

ClosurePolicy policy_of(const cg_closure_request* req) {
  ClosurePolicy p;
  if (!req)
    return p;
  p.include_optional = req->include_optional != 0;
  auto mode = str(req->policy);
  if (mode.empty() || mode == "minimal")
    p.resolution = ClosurePolicy::Resolution::MinimalClosure;
  else if (mode == "preferred")
    p.resolution = ClosurePolicy::Resolution::PreferredList;
  else if (mode == "explicit")
    p.resolution = ClosurePolicy::Resolution::Explicit;
  else
    throw Error(ErrorCategory::Usage, "BAD_POLICY",
                "policy must be minimal, preferred or explicit, not '" + mode + "'");
  p.preferred = text::split_list(str(req->preferred));
  p.choices = parse_choices(str(req->choices));
  return p;
}

std::set<std::string> targets_of(const cg_closure_request* req) {
  require(req, "request");
  auto list = text::split_list(str(req->targets));
  return {list.begin(), list.end()};
}

std::string node_csv(const std::set<std::string>& nodes) {
  return text::join({nodes.begin(), nodes.end()}, ",");
}

std::string edge_lines(const std::vector<PrerequisiteEdge>& edges) {
  std::string out;
  for (const auto& e : edges) {
    out += e.tail + " " + e.head + " " + std::string(to_string(e.kind));
    if (e.grouped())
      out += ":" + e.alt_group;
    out += "\n";
  }
  return out;
}

} // namespace

extern "C" {

const char* cg_version(void) { return "1.0.0"; }

const char* cg_status_name(cg_status status) {
  switch (status) {
  case CG_OK:
    return "ok";
  case CG_ERR_USAGE:
    return "usage";
  case CG_ERR_VALIDATION:
    return "validation";
  case CG_ERR_IO:
    return "io";
  case CG_ERR_CONSTRAINT:
    return "constraint";
  case CG_ERR_INTERNAL:
    return "internal";
  }
  return "unknown";
}

const char* cg_last_error_code(void) { return last_error.code.c_str(); }
const char* cg_last_error_message(void) { return last_error.message.c_str(); }
const char* cg_last_error_detail(void) { return last_error.detail.c_str(); }
void cg_string_free(char* s) { std::free(s); }

// ---- graphs

cg_status cg_graph_load(const char* path, cg_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new cg_graph{load_graph_file(path)};
  });
}

cg_status cg_graph_parse(const char* text_in, cg_graph** out) {
  return guard([&] {
    require(text_in, "text");
    require(out, "out");
    auto doc = parse_native(text_in);
    if (!doc.report.ok())
      throw InvalidGraphError(std::move(doc.report));
    *out = new cg_graph{std::move(doc.graph)};
  });
}

cg_status cg_graph_import_graphml(const char* xml, const char* colors, const char* discipline,
                                  int ids_from_labels, cg_graph** out, char** warnings) {
  return guard([&] {
    require(xml, "xml");
    require(out, "out");
    GraphMLOptions opts;
    if (discipline && *discipline)
      opts.discipline = discipline;
    opts.ids_from_labels = ids_from_labels != 0;
    auto map = colors && *colors ? ColorMap::parse(colors) : ColorMap::defaults();
    auto imported = import_graphml(xml, map, opts);
    std::string lines;
    for (const auto& w : imported.warnings)
      lines += w.code + "\t" + text::join(w.ids, ",") + "\t" + w.message + "\n";
    if (warnings)
      *warnings = dup(lines);
    *out = new cg_graph{std::move(imported.graph)};
  });
}

void cg_graph_free(cg_graph* g) { delete g; }

const char* cg_graph_discipline(const cg_graph* g) { return g ? g->g.discipline.c_str() : ""; }
size_t cg_graph_node_count(const cg_graph* g) { return g ? g->g.nodes.size() : 0; }
size_t cg_graph_edge_count(const cg_graph* g) { return g ? g->g.edges.size() : 0; }

cg_status cg_graph_write_native(const cg_graph* g, char** out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup(write_native(g->g));
  });
}

cg_status cg_graph_predecessors(const cg_graph* g, const char* id, char** out) {
  return guard([&] {
    require(g, "graph");
    require(id, "id");
    require(out, "out");
    *out = dup(edge_lines(direct_predecessors(g->g, id)));
  });
}

cg_status cg_graph_successors(const cg_graph* g, const char* id, char** out) {
  return guard([&] {
    require(g, "graph");
    require(id, "id");
    require(out, "out");
    *out = dup(edge_lines(direct_successors(g->g, id)));
  });
}

cg_status cg_validate_text(const char* text_in, char** report, size_t* error_count) {
  return guard([&] {
    require(text_in, "text");
    require(report, "report");
    auto doc = parse_native(text_in);
    std::string out = "nodes\t" + std::to_string(doc.graph.nodes.size()) + "\nedges\t" +
                      std::to_string(doc.graph.edges.size()) + "\n" + finding_lines(doc.report);
    *report = dup(out);
    if (error_count)
      *error_count = doc.report.errors.size();
  });
}

cg_status cg_graph_merge(const cg_graph* const* graphs, size_t count, const char* cross_text,
                         const char* discipline, cg_graph** out) {
  return guard([&] {
    require(graphs, "graphs");
    require(out, "out");
    std::vector<CurriculumGraph> inputs;
    for (size_t i = 0; i < count; ++i) {
      require(graphs[i], "graph");
      inputs.push_back(graphs[i]->g);
    }
    auto cross = cross_text ? parse_cross_edges(cross_text) : std::vector<CrossEdge>{};
    MergeOptions opts;
    opts.discipline = str(discipline);
    *out = new cg_graph{merge_graphs(inputs, cross, opts)};
  });
}

// ---- closures

cg_status cg_closure_compute(const cg_graph* g, const cg_closure_request* req, cg_closure** out) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cg_closure{predecessor_closure(g->g, targets_of(req), policy_of(req))};
  });
}

void cg_closure_free(cg_closure* c) { delete c; }

cg_status cg_closure_nodes(const cg_closure* c, char** out) {
  return guard([&] {
    require(c, "closure");
    require(out, "out");
    *out = dup(node_csv(c->c.nodes));
  });
}

cg_status cg_closure_describe(const cg_closure* c, char** out) {
  return guard([&] {
    require(c, "closure");
    require(out, "out");
    std::string s;
    for (const auto& [gid, e] : c->c.resolved_groups)
      s += "group\t" + gid + "\t" + e.tail + "\n";
    for (const auto& e : c->c.skipped_optional)
      s += "skipped\t" + e.tail + "\t" + e.head + "\n";
    *out = dup(s);
  });
}

cg_status cg_closure_enumerate(const cg_graph* g, const cg_closure_request* req, size_t cap,
                               char** out, int* truncated) {
  return guard([&] {
    require(g, "graph");
    require(out, "out");
    auto r = enumerate_closures(g->g, targets_of(req), req->include_optional != 0, cap);
    std::string s;
    for (const auto& c : r.closures)
      s += node_csv(c.nodes) + "\n";
    *out = dup(s);
    if (truncated)
      *truncated = r.truncated;
  });
}

// ---- orders

cg_status cg_order_topological(const cg_closure* c, char** out) {
  return guard([&] {
    require(c, "closure");
    require(out, "out");
    *out = dup(text::join(topological_order(c->c).nodes, ","));
  });
}

cg_status cg_order_enumerate(const cg_closure* c, size_t cap, char** out, int* truncated) {
  return guard([&] {
    require(c, "closure");
    require(out, "out");
    auto set = all_linearizations(c->c, cap);
    std::string s;
    for (const auto& lin : set.orders)
      s += text::join(lin.nodes, ",") + "\n";
    *out = dup(s);
    if (truncated)
      *truncated = set.truncated;
  });
}

cg_status cg_order_count(const cg_closure* c, uint64_t cap, uint64_t* count, int* exact) {
  return guard([&] {
    require(c, "closure");
    require(count, "count");
    auto r = count_linearizations(c->c, cap);
    *count = r.count;
    if (exact)
      *exact = r.exact;
  });
}

cg_status cg_order_check(const cg_closure* c, const char* order_csv, int* valid, char** detail) {
  return guard([&] {
    require(c, "closure");
    require(order_csv, "order");
    require(valid, "valid");
    auto order = text::split_list(order_csv);
    auto check = is_valid_order(c->c, order);
    *valid = check.valid;
    if (detail) {
      std::string d = check.detail;
      if (check.defect == OrderDefect::NotPermutation)
        d = "NOT_PERMUTATION: " + d;
      else if (check.violated)
        d = "EDGE_VIOLATION " + check.violated->tail + "->" + check.violated->head + ": " + d;
      *detail = dup(d);
    }
  });
}

// ---- popularity and ranking

cg_status cg_popularity_new(cg_popularity** out) {
  return guard([&] {
    require(out, "out");
    *out = new cg_popularity{};
  });
}

cg_status cg_popularity_load(const char* path, cg_popularity** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new cg_popularity{PopularityStore::load(path)};
  });
}

cg_status cg_popularity_save(const cg_popularity* p, const char* path) {
  return guard([&] {
    require(p, "popularity");
    require(path, "path");
    p->p.save(path);
  });
}

cg_status cg_popularity_record(cg_popularity* p, const char* order_csv) {
  return guard([&] {
    require(p, "popularity");
    require(order_csv, "order");
    p->p.record_adoption(Linearization{text::split_list(order_csv)});
  });
}

void cg_popularity_free(cg_popularity* p) { delete p; }

cg_status cg_rank(const cg_graph* g, const cg_closure* c, size_t cap, const char* weights,
                  const cg_popularity* pop, char** out, int* truncated) {
  return guard([&] {
    require(g, "graph");
    require(c, "closure");
    require(out, "out");
    RankingWeights w;
    if (weights && *weights) {
      auto parts = text::split_list(weights);
      std::vector<double> values;
      for (const auto& part : parts)
        if (auto v = text::parse_decimal(part))
          values.push_back(*v);
      if (parts.size() != 3 || values.size() != 3)
        throw Error(ErrorCategory::Usage, "INVALID_WEIGHTS", "weights must be 't,p,c' decimals");
      w = {values[0], values[1], values[2]};
    }
    w.check();
    auto set = all_linearizations(c->c, cap);
    PopularityStore empty;
    auto ranked = rank_orderings(std::move(set.orders), g->g, w, pop ? pop->p : empty);
    std::string s;
    for (const auto& r : ranked)
      s += text::format_decimal(r.score.total) + "\t" + text::format_decimal(r.score.time) + "\t" +
           text::format_decimal(r.score.popularity) + "\t" +
           text::format_decimal(r.score.coherence) + "\t" + text::join(r.order.nodes, ",") + "\n";
    *out = dup(s);
    if (truncated)
      *truncated = set.truncated;
  });
}

// ---- content, exercises, books

cg_status cg_content_load(const char* manifest_path, cg_content** out) {
  return guard([&] {
    require(manifest_path, "manifest");
    require(out, "out");
    *out = new cg_content{load_content_store(manifest_path)};
  });
}

cg_status cg_content_new(cg_content** out) {
  return guard([&] {
    require(out, "out");
    *out = new cg_content{};
  });
}

void cg_content_free(cg_content* c) { delete c; }

cg_status cg_exercises_load(const char* path, const cg_graph* g, cg_exercises** out) {
  return guard([&] {
    require(path, "path");
    require(g, "graph");
    require(out, "out");
    *out = new cg_exercises{load_exercises(path, g->g)};
  });
}

cg_status cg_exercises_new(cg_exercises** out) {
  return guard([&] {
    require(out, "out");
    *out = new cg_exercises{};
  });
}

void cg_exercises_free(cg_exercises* e) { delete e; }

cg_status cg_plan_assemble(const cg_graph* g, const cg_closure* c, const char* order_csv,
                           const cg_exercises* ex, const cg_content* content,
                           const cg_plan_meta* meta, cg_plan** out) {
  return guard([&] {
    require(g, "graph");
    require(c, "closure");
    require(content, "content");
    require(out, "out");
    Linearization order =
        order_csv ? Linearization{text::split_list(order_csv)} : topological_order(c->c);
    PlanMeta m;
    std::vector<std::string> stubs;
    if (meta) {
      m.title = str(meta->title);
      m.created_at = meta->created_at;
      if (meta->author_role) {
        auto role = parse_author_role(meta->author_role);
        if (!role)
          throw Error(ErrorCategory::Usage, "BAD_ROLE", "author role must be teacher or student");
        m.author_role = *role;
      }
      stubs = text::split_list(str(meta->stubs));
    }
    std::vector<Exercise> none;
    *out = new cg_plan{
        assemble_book(g->g, c->c, order, ex ? ex->list : none, content->c, m, stubs)};
  });
}

cg_status cg_plan_load(const char* manifest_text, const cg_graph* g, cg_plan** out) {
  return guard([&] {
    require(manifest_text, "manifest");
    require(g, "graph");
    require(out, "out");
    *out = new cg_plan{parse_plan_manifest(manifest_text, g->g)};
  });
}

void cg_plan_free(cg_plan* p) { delete p; }

const char* cg_plan_id(const cg_plan* p) { return p ? p->p.id.c_str() : ""; }

cg_status cg_plan_manifest(const cg_plan* p, char** out) {
  return guard([&] {
    require(p, "plan");
    require(out, "out");
    *out = dup(write_plan_manifest(p->p));
  });
}

cg_status cg_plan_items(const cg_plan* p, char** out) {
  return guard([&] {
    require(p, "plan");
    require(out, "out");
    std::string s;
    for (const auto& it : p->p.items)
      s += (it.kind == BookItem::Kind::Topic ? "topic\t" : "exercise\t") + it.ref + "\n";
    for (const auto& om : p->p.omitted)
      s += "omitted\t" + om.exercise + "\t" + text::join(om.missing, ",") + "\n";
    *out = dup(s);
  });
}

cg_status cg_plan_render(const cg_graph* g, const cg_plan* p, const cg_content* content,
                         char** out) {
  return guard([&] {
    require(g, "graph");
    require(p, "plan");
    require(content, "content");
    require(out, "out");
    *out = dup(render_book(g->g, p->p, content->c));
  });
}

cg_status cg_plan_edit(const cg_graph* g, const cg_plan* p, const char* ops_text,
                       const cg_content* content, cg_plan** out) {
  return guard([&] {
    require(g, "graph");
    require(p, "plan");
    require(ops_text, "ops");
    require(out, "out");
    auto ops = parse_edit_ops(ops_text);
    auto outcome = edit_plan_in_itinere(g->g, p->p, ops, content ? &content->c : nullptr);
    if (!outcome.accepted()) {
      const auto& r = *outcome.rejection;
      std::vector<std::string> ids;
      if (r.edge)
        ids = {r.edge->tail, r.edge->head};
      else if (!r.missing.empty())
        ids = {r.missing};
      auto category = r.code == "ORDER_VIOLATION" || r.code == "MISSING_PREREQUISITE"
                          ? ErrorCategory::Constraint
                          : ErrorCategory::Usage;
      throw Error(category, r.code, r.message, ids);
    }
    *out = new cg_plan{std::move(*outcome.plan)};
  });
}

// ---- progress and review

cg_status cg_progress_load(const char* path, cg_progress** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new cg_progress{parse_progress(text::read_file(path))};
  });
}

cg_status cg_progress_new(const char* student, cg_progress** out) {
  return guard([&] {
    require(out, "out");
    auto* p = new cg_progress{};
    p->r.student = str(student);
    *out = p;
  });
}

cg_status cg_progress_update(cg_progress* p, const cg_graph* g, const char* node,
                             const char* status, int64_t now) {
  return guard([&] {
    require(p, "progress");
    require(g, "graph");
    require(node, "node");
    require(status, "status");
    auto m = parse_mastery(status);
    if (!m)
      throw Error(ErrorCategory::Usage, "BAD_STATUS",
                  "status must be unseen, in_progress, mastered or gap");
    p->r = update_progress(p->r, g->g, node, *m, now);
  });
}

cg_status cg_progress_text(const cg_progress* p, char** out) {
  return guard([&] {
    require(p, "progress");
    require(out, "out");
    *out = dup(write_progress(p->r));
  });
}

void cg_progress_free(cg_progress* p) { delete p; }

cg_status cg_review(const cg_graph* g, const cg_progress* p, const char* gaps_csv,
                    const cg_closure_request* req, int override_status, cg_closure** out_closure,
                    char** order_csv, char** stubs_csv) {
  return guard([&] {
    require(g, "graph");
    require(p, "progress");
    require(gaps_csv, "gaps");
    require(out_closure, "out_closure");
    auto gaps = text::split_list(gaps_csv);
    ReviewOptions options;
    options.policy = policy_of(req);
    options.override_status = override_status != 0;
    auto r = review_book(g->g, p->r, {gaps.begin(), gaps.end()}, options);
    if (order_csv)
      *order_csv = dup(text::join(r.order.nodes, ","));
    if (stubs_csv)
      *stubs_csv = dup(text::join(r.stubs, ","));
    *out_closure = new cg_closure{std::move(r.closure)};
  });
}

// ---- interop

cg_status cg_sync_report(const cg_graph* merged, const char* orders_text,
                         const char* calendar_text, char** out) {
  return guard([&] {
    require(merged, "graph");
    require(orders_text, "orders");
    require(out, "out");
    auto orders = parse_orders(orders_text);
    std::optional<Calendar> calendar;
    if (calendar_text)
      calendar = parse_calendar(calendar_text);
    auto findings = sync_report(merged->g, orders, calendar ? &*calendar : nullptr);
    std::string s;
    for (const auto& f : findings)
      s += std::string(to_string(f.status)) + "\t" + f.edge.tail + "\t" + f.edge.head + "\t" +
           (f.deadline ? std::to_string(*f.deadline) : std::string("-")) + "\t" + f.detail + "\n";
    *out = dup(s);
  });
}

cg_status cg_tags_lookup(const cg_graph* g, const char* index_text, const char* tags_csv,
                         char** out) {
  return guard([&] {
    require(g, "graph");
    require(index_text, "index");
    require(tags_csv, "tags");
    require(out, "out");
    auto tags = text::split_list(tags_csv);
    auto r = competency_lookup(parse_tag_index(index_text), tags, g->g);
    *out = dup("direct\t" + node_csv(r.direct_nodes) + "\nunknown\t" +
               text::join(r.unknown_tags, ",") + "\nclosure\t" + node_csv(r.closure.nodes) + "\n");
  });
}

cg_status cg_tags_process_export(const cg_graph* g, const char* index_text,
                                 const char* export_text, int make_exercises, char** report,
                                 char** exercises) {
  return guard([&] {
    require(g, "graph");
    require(index_text, "index");
    require(export_text, "export");
    require(report, "report");
    auto forms = parse_analyzer_export(export_text);
    auto outcomes =
        process_analyzer_export(parse_tag_index(index_text), forms, g->g, make_exercises != 0);
    std::string s;
    std::vector<Exercise> made;
    for (const auto& o : outcomes) {
      s += o.form.form + "\t" + (o.error.empty() ? std::string("MATCH") : o.error) + "\t" +
           (o.report ? node_csv(o.report->direct_nodes) : std::string("-")) + "\t" +
           (o.report ? text::join(o.report->unknown_tags, ",")
                     : text::join(o.form.tags, ",")) +
           "\t" + (o.exercise ? o.exercise->id : std::string("-")) + "\n";
      if (o.exercise)
        made.push_back(*o.exercise);
    }
    *report = dup(s);
    if (exercises)
      *exercises = dup(write_exercises(made));
  });
}

// ---- service

cg_status cg_service_open(const char* data_dir, cg_service** out) {
  return guard([&] {
    require(data_dir, "data_dir");
    require(out, "out");
    auto ws = std::make_shared<Workspace>(data_dir);
    *out = new cg_service{std::make_unique<Service>(std::move(ws))};
  });
}

cg_status cg_service_bind(cg_service* s, const char* host, int port, int* bound_port) {
  return guard([&] {
    require(s, "service");
    auto bound = s->service->bind(host ? host : "127.0.0.1", port);
    if (bound <= 0)
      throw Error(ErrorCategory::Io, "BIND_FAILED", "cannot bind the listener");
    if (bound_port)
      *bound_port = bound;
  });
}

cg_status cg_service_run(cg_service* s) {
  return guard([&] {
    require(s, "service");
    s->service->run();
  });
}

void cg_service_stop(cg_service* s) {
  if (s)
    s->service->stop();
}

cg_status cg_service_handle(cg_service* s, const char* method, const char* path, const char* body,
                            int* http_status, char** response) {
  return guard([&] {
    require(s, "service");
    require(method, "method");
    require(path, "path");
    std::string p = path;
    std::map<std::string, std::string> query;
    if (auto q = p.find('?'); q != std::string::npos) {
      for (auto kv : text::split(std::string_view(p).substr(q + 1), '&')) {
        auto eq = kv.find('=');
        query.emplace(std::string(kv.substr(0, eq)),
                      eq == std::string_view::npos ? std::string() : std::string(kv.substr(eq + 1)));
      }
      p.resize(q);
    }
    auto r = s->service->handle(method, p, str(body), query);
    if (http_status)
      *http_status = r.status;
    if (response)
      *response = dup(r.body);
  });
}

void cg_service_free(cg_service* s) { delete s; }

} // extern "C"
