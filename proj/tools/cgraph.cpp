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
// cgraph: batch front end over the curriculum C API.
//
// stdout carries one record per line; diagnostics go to stderr. The exit
// status is the cg_status category of the first failure.
#include <curriculum/curriculum.h>

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Failure {
  cg_status status;
};

struct Usage {
  std::string message;
};

void check(cg_status s) {
  if (s == CG_OK)
    return;
  std::cerr << "error: " << cg_last_error_code() << ": " << cg_last_error_message() << "\n";
  std::string detail = cg_last_error_detail();
  if (!detail.empty()) {
    std::istringstream in(detail);
    for (std::string line; std::getline(in, line);)
      std::cerr << "  " << line << "\n";
  }
  throw Failure{s};
}

struct Freer {
  void operator()(char* s) const { cg_string_free(s); }
};
using CString = std::unique_ptr<char, Freer>;

std::string take(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

template <typename T, void (*F)(T*)>
struct Deleter {
  void operator()(T* p) const { F(p); }
};
using Graph = std::unique_ptr<cg_graph, Deleter<cg_graph, cg_graph_free>>;
using Closure = std::unique_ptr<cg_closure, Deleter<cg_closure, cg_closure_free>>;
using Popularity = std::unique_ptr<cg_popularity, Deleter<cg_popularity, cg_popularity_free>>;
using Content = std::unique_ptr<cg_content, Deleter<cg_content, cg_content_free>>;
using Exercises = std::unique_ptr<cg_exercises, Deleter<cg_exercises, cg_exercises_free>>;
using Progress = std::unique_ptr<cg_progress, Deleter<cg_progress, cg_progress_free>>;
using Plan = std::unique_ptr<cg_plan, Deleter<cg_plan, cg_plan_free>>;
using ServiceHandle = std::unique_ptr<cg_service, Deleter<cg_service, cg_service_free>>;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: MISSING_FILE: cannot read " << path << "\n";
    throw Failure{CG_ERR_IO};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path())
    fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    std::cerr << "error: IO_ERROR: cannot write " << path.string() << "\n";
    throw Failure{CG_ERR_IO};
  }
}

std::string join(const std::vector<std::string>& items, char sep = ',') {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty())
      out += sep;
    out += s;
  }
  return out;
}

Graph load_graph(const std::string& path) {
  cg_graph* g = nullptr;
  check(cg_graph_load(path.c_str(), &g));
  return Graph(g);
}

// Shared closure flags for every subcommand that needs a target set.
struct ClosureFlags {
  std::vector<std::string> targets;
  bool include_optional = false;
  std::vector<std::string> choose;
  std::string policy = "minimal";
  std::vector<std::string> prefer;

  std::string targets_csv, choices_csv, preferred_csv;

  void attach(CLI::App* app, bool targets_required = true) {
    auto* t = app->add_option("--target", targets, "Target node id(s), comma separated")
                  ->delimiter(',');
    if (targets_required)
      t->required();
    app->add_flag("--include-optional", include_optional, "Follow optional edges");
    app->add_option("--choose", choose, "Pin an alternative: group=tail or group=tail->head")
        ->delimiter(',')
        ->check([](const std::string& v) {
          auto eq = v.find('=');
          return eq == std::string::npos || eq == 0 || eq + 1 == v.size()
                     ? std::string("choice must look like group=tail")
                     : std::string();
        });
    app->add_option("--policy", policy, "Alternative resolution policy")
        ->check(CLI::IsMember({"minimal", "preferred", "explicit"}));
    app->add_option("--prefer", prefer, "Preferred tails for --policy preferred")->delimiter(',');
  }

  cg_closure_request request() {
    targets_csv = join(targets);
    choices_csv = join(choose);
    preferred_csv = join(prefer);
    return {targets_csv.c_str(), include_optional ? 1 : 0, policy.c_str(), preferred_csv.c_str(),
            choices_csv.c_str()};
  }
};

Closure compute(const cg_graph* g, ClosureFlags& flags) {
  auto req = flags.request();
  cg_closure* c = nullptr;
  check(cg_closure_compute(g, &req, &c));
  return Closure(c);
}

void describe(const cg_closure* c) {
  auto lines = take([&] {
    char* s = nullptr;
    check(cg_closure_describe(c, &s));
    return s;
  }());
  std::istringstream in(lines);
  for (std::string line; std::getline(in, line);)
    std::cerr << "note: " << line << "\n";
}

std::string closure_nodes(const cg_closure* c) {
  char* s = nullptr;
  check(cg_closure_nodes(c, &s));
  return take(s);
}

int64_t epoch_or_now(const std::optional<int64_t>& epoch) {
  return epoch ? *epoch : static_cast<int64_t>(std::time(nullptr));
}

Content load_content(const std::string& manifest) {
  cg_content* c = nullptr;
  check(manifest.empty() ? cg_content_new(&c) : cg_content_load(manifest.c_str(), &c));
  return Content(c);
}

Exercises load_exercises(const std::string& path, const cg_graph* g) {
  cg_exercises* e = nullptr;
  check(path.empty() ? cg_exercises_new(&e) : cg_exercises_load(path.c_str(), g, &e));
  return Exercises(e);
}

// Writes <dir>/<plan>.plan and <dir>/<plan>.md; prints the plan id.
void emit_plan(const cg_graph* g, const cg_plan* p, const cg_content* content,
               const std::string& out_dir) {
  char* manifest = nullptr;
  check(cg_plan_manifest(p, &manifest));
  char* book = nullptr;
  check(cg_plan_render(g, p, content, &book));
  std::string id = cg_plan_id(p);
  write_text(fs::path(out_dir) / (id + ".plan"), take(manifest));
  write_text(fs::path(out_dir) / (id + ".md"), take(book));
  char* items = nullptr;
  check(cg_plan_items(p, &items));
  std::istringstream in(take(items));
  for (std::string line; std::getline(in, line);)
    if (line.rfind("omitted\t", 0) == 0)
      std::cerr << "note: " << line << "\n";
  std::cout << id << "\n";
}

cg_service* running_service = nullptr;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curriculum graph engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cg_version()));

  // validate
  std::string graph_path;
  auto* validate = app.add_subcommand("validate", "Check a graph and print its report");
  validate->add_option("graph", graph_path, "Native or GraphML graph")->required();
  bool canonical = false;
  validate->add_flag("--canonical", canonical,
                     "Print the canonical native text of a valid graph; report goes to stderr");

  // closure
  ClosureFlags cf;
  std::optional<size_t> enumerate_cap;
  auto* closure = app.add_subcommand("closure", "Predecessor closure of the targets");
  closure->add_option("graph", graph_path)->required();
  cf.attach(closure);
  closure->add_option("--enumerate", enumerate_cap, "List up to N closures over all choices");

  // order / enumerate / count
  auto* order = app.add_subcommand("order", "Deterministic linearization of the closure");
  order->add_option("graph", graph_path)->required();
  cf.attach(order);

  size_t cap = 1000;
  auto* enumerate = app.add_subcommand("enumerate", "All linearizations up to a cap");
  enumerate->add_option("graph", graph_path)->required();
  cf.attach(enumerate);
  enumerate->add_option("--cap", cap)->required();

  auto* count = app.add_subcommand("count", "Number of linearizations up to a cap");
  count->add_option("graph", graph_path)->required();
  cf.attach(count);
  count->add_option("--cap", cap)->required();

  // rank
  std::string weights, popularity_path;
  auto* rank = app.add_subcommand("rank", "Scored linearizations, best first");
  rank->add_option("graph", graph_path)->required();
  cf.attach(rank);
  rank->add_option("--cap", cap)->required();
  rank->add_option("--weights", weights, "t,p,c weights");
  rank->add_option("--popularity", popularity_path, "Adoption counts file");

  // assemble
  std::string content_path, exercises_path, out_dir, title, role, order_csv;
  std::optional<int64_t> epoch;
  auto* assemble = app.add_subcommand("assemble", "Build a plan manifest and rendered book");
  assemble->add_option("graph", graph_path)->required();
  cf.attach(assemble);
  assemble->add_option("--content", content_path, "Content manifest")->required();
  assemble->add_option("--exercises", exercises_path, "Exercise pool");
  assemble->add_option("--out", out_dir, "Output directory")->required();
  assemble->add_option("--order", order_csv, "Explicit order, comma separated");
  assemble->add_option("--title", title);
  assemble->add_option("--author-role", role)->check(CLI::IsMember({"teacher", "student"}));
  assemble->add_option("--epoch", epoch, "Creation time in epoch seconds");

  // review
  std::string progress_path;
  std::vector<std::string> gaps;
  bool override_status = false;
  ClosureFlags rf;
  auto* review = app.add_subcommand("review", "Review book for a student's gaps");
  review->add_option("graph", graph_path)->required();
  review->add_option("--progress", progress_path)->required();
  review->add_option("--gaps", gaps)->delimiter(',')->required();
  review->add_flag("--override", override_status, "Allow gaps that are marked mastered");
  rf.attach(review, false);
  review->add_option("--content", content_path)->required();
  review->add_option("--exercises", exercises_path);
  review->add_option("--out", out_dir)->required();
  review->add_option("--title", title);
  review->add_option("--epoch", epoch);

  // edit
  std::string plan_path, ops;
  auto* edit = app.add_subcommand("edit", "Apply insert/remove/move edits to a saved plan");
  edit->add_option("graph", graph_path)->required();
  edit->add_option("--plan", plan_path)->required();
  edit->add_option("--ops", ops, "Edits separated by ';'")->required();
  edit->add_option("--content", content_path);
  edit->add_option("--out", out_dir)->required();

  // merge
  std::vector<std::string> graph_paths;
  std::string cross_path, out_file, discipline;
  auto* merge = app.add_subcommand("merge", "Merge discipline graphs with cross edges");
  merge->add_option("graphs", graph_paths)->required();
  merge->add_option("--cross", cross_path);
  merge->add_option("--discipline", discipline, "Name of the merged graph");
  merge->add_option("--out", out_file);

  // sync
  std::string orders_path, calendar_path;
  auto* sync = app.add_subcommand("sync", "Check cross-discipline timing against orders");
  sync->add_option("graph", graph_path)->required();
  sync->add_option("--orders", orders_path)->required();
  sync->add_option("--calendar", calendar_path);

  // tags
  std::string index_path, export_path;
  std::vector<std::string> tag_list;
  bool make_exercises = false;
  auto* tags = app.add_subcommand("tags", "Competency lookup from analyzer tags");
  tags->add_option("graph", graph_path)->required();
  tags->add_option("--index", index_path)->required();
  auto* export_opt = tags->add_option("--analyzer-export", export_path);
  auto* tags_opt = tags->add_option("--tags", tag_list)->delimiter(',');
  export_opt->excludes(tags_opt);
  auto* make_opt = tags->add_flag("--make-exercises", make_exercises);
  auto* tags_out = tags->add_option("--out", out_file, "Write generated exercises here");
  make_opt->needs(export_opt)->needs(tags_out);

  // import-graphml
  std::string colors;
  bool ids_from_labels = false;
  auto* import = app.add_subcommand("import-graphml", "Convert a yEd GraphML file");
  import->add_option("file", graph_path)->required();
  import->add_option("--colors", colors, "Color map, e.g. #0000ff=optional,nearest");
  import->add_option("--discipline", discipline);
  import->add_flag("--ids-from-labels", ids_from_labels);
  import->add_option("--out", out_file);

  // serve
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string data_dir;
  if (const char* env = std::getenv("CGRAPH_DATA_DIR"))
    data_dir = env;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--host", host);
  serve->add_option("--data", data_dir, "Workspace directory (default $CGRAPH_DATA_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return CG_ERR_USAGE;
  }

  try {
    if (*validate) {
      auto text = read_text(graph_path);
      if (text.find_first_not_of(" \t\r\n") != std::string::npos &&
          text[text.find_first_not_of(" \t\r\n")] == '<') {
        cg_graph* g = nullptr;
        char* warnings = nullptr;
        check(cg_graph_import_graphml(text.c_str(), nullptr, nullptr, 0, &g, &warnings));
        Graph owned(g);
        std::cout << "nodes\t" << cg_graph_node_count(g) << "\nedges\t" << cg_graph_edge_count(g)
                  << "\n";
        std::istringstream in(take(warnings));
        for (std::string line; std::getline(in, line);)
          std::cout << "warning\t" << line << "\n";
        return 0;
      }
      char* report = nullptr;
      size_t errors = 0;
      check(cg_validate_text(text.c_str(), &report, &errors));
      (canonical ? std::cerr : std::cout) << take(report);
      if (errors) {
        std::cerr << "error: " << errors << " validation error(s)\n";
        return CG_ERR_VALIDATION;
      }
      if (canonical) {
        cg_graph* g = nullptr;
        check(cg_graph_parse(text.c_str(), &g));
        Graph owned(g);
        char* native = nullptr;
        check(cg_graph_write_native(g, &native));
        std::cout << take(native);
      }
      return 0;
    }

    if (*closure) {
      auto g = load_graph(graph_path);
      if (enumerate_cap) {
        auto req = cf.request();
        char* out = nullptr;
        int truncated = 0;
        check(cg_closure_enumerate(g.get(), &req, *enumerate_cap, &out, &truncated));
        std::cout << take(out);
        if (truncated)
          std::cerr << "note: truncated at " << *enumerate_cap << " closures\n";
        return 0;
      }
      auto c = compute(g.get(), cf);
      describe(c.get());
      std::cout << closure_nodes(c.get()) << "\n";
      return 0;
    }

    if (*order) {
      auto g = load_graph(graph_path);
      auto c = compute(g.get(), cf);
      char* out = nullptr;
      check(cg_order_topological(c.get(), &out));
      std::cout << take(out) << "\n";
      return 0;
    }

    if (*enumerate) {
      auto g = load_graph(graph_path);
      auto c = compute(g.get(), cf);
      char* out = nullptr;
      int truncated = 0;
      check(cg_order_enumerate(c.get(), cap, &out, &truncated));
      std::cout << take(out);
      if (truncated)
        std::cerr << "note: truncated at " << cap << " orderings\n";
      return 0;
    }

    if (*count) {
      auto g = load_graph(graph_path);
      auto c = compute(g.get(), cf);
      uint64_t n = 0;
      int exact = 0;
      check(cg_order_count(c.get(), cap, &n, &exact));
      std::cout << n << (exact ? " exact" : " capped") << "\n";
      return 0;
    }

    if (*rank) {
      auto g = load_graph(graph_path);
      auto c = compute(g.get(), cf);
      cg_popularity* p = nullptr;
      check(popularity_path.empty() ? cg_popularity_new(&p)
                                    : cg_popularity_load(popularity_path.c_str(), &p));
      Popularity pop(p);
      char* out = nullptr;
      int truncated = 0;
      check(cg_rank(g.get(), c.get(), cap, weights.empty() ? nullptr : weights.c_str(), pop.get(),
                    &out, &truncated));
      std::cout << take(out);
      if (truncated)
        std::cerr << "note: ranked the first " << cap << " orderings only\n";
      return 0;
    }

    if (*assemble) {
      auto g = load_graph(graph_path);
      auto c = compute(g.get(), cf);
      auto content = load_content(content_path);
      auto ex = load_exercises(exercises_path, g.get());
      cg_plan_meta meta{title.empty() ? nullptr : title.c_str(),
                        role.empty() ? nullptr : role.c_str(), epoch_or_now(epoch), nullptr};
      cg_plan* p = nullptr;
      check(cg_plan_assemble(g.get(), c.get(), order_csv.empty() ? nullptr : order_csv.c_str(),
                             ex.get(), content.get(), &meta, &p));
      Plan plan(p);
      emit_plan(g.get(), plan.get(), content.get(), out_dir);
      return 0;
    }

    if (*review) {
      auto g = load_graph(graph_path);
      cg_progress* pr = nullptr;
      check(cg_progress_load(progress_path.c_str(), &pr));
      Progress progress(pr);
      auto req = rf.request();
      auto gaps_csv = join(gaps);
      cg_closure* c = nullptr;
      char* order_out = nullptr;
      char* stubs_out = nullptr;
      check(cg_review(g.get(), progress.get(), gaps_csv.c_str(), &req, override_status ? 1 : 0, &c,
                      &order_out, &stubs_out));
      Closure rc(c);
      auto review_order = take(order_out);
      auto stubs = take(stubs_out);
      auto content = load_content(content_path);
      auto ex = load_exercises(exercises_path, g.get());
      cg_plan_meta meta{title.empty() ? nullptr : title.c_str(), "student", epoch_or_now(epoch),
                        stubs.c_str()};
      cg_plan* p = nullptr;
      check(cg_plan_assemble(g.get(), rc.get(), review_order.c_str(), ex.get(), content.get(),
                             &meta, &p));
      Plan plan(p);
      if (!stubs.empty())
        std::cerr << "note: stubs " << stubs << "\n";
      emit_plan(g.get(), plan.get(), content.get(), out_dir);
      return 0;
    }

    if (*edit) {
      auto g = load_graph(graph_path);
      auto manifest = read_text(plan_path);
      cg_plan* p = nullptr;
      check(cg_plan_load(manifest.c_str(), g.get(), &p));
      Plan before(p);
      auto content = load_content(content_path);
      cg_plan* q = nullptr;
      check(cg_plan_edit(g.get(), before.get(), ops.c_str(),
                         content_path.empty() ? nullptr : content.get(), &q));
      Plan after(q);
      emit_plan(g.get(), after.get(), content.get(), out_dir);
      return 0;
    }

    if (*merge) {
      std::vector<Graph> owned;
      std::vector<const cg_graph*> raw;
      for (const auto& path : graph_paths) {
        owned.push_back(load_graph(path));
        raw.push_back(owned.back().get());
      }
      std::string cross = cross_path.empty() ? std::string() : read_text(cross_path);
      cg_graph* m = nullptr;
      check(cg_graph_merge(raw.data(), raw.size(), cross.c_str(),
                           discipline.empty() ? nullptr : discipline.c_str(), &m));
      Graph merged(m);
      char* native = nullptr;
      check(cg_graph_write_native(merged.get(), &native));
      auto text = take(native);
      if (out_file.empty()) {
        std::cout << text;
      } else {
        write_text(out_file, text);
        std::cout << "nodes\t" << cg_graph_node_count(m) << "\nedges\t" << cg_graph_edge_count(m)
                  << "\n";
      }
      return 0;
    }

    if (*sync) {
      auto g = load_graph(graph_path);
      auto orders = read_text(orders_path);
      std::string calendar = calendar_path.empty() ? std::string() : read_text(calendar_path);
      char* out = nullptr;
      check(cg_sync_report(g.get(), orders.c_str(),
                           calendar_path.empty() ? nullptr : calendar.c_str(), &out));
      auto report = take(out);
      std::cout << report;
      // Scheduling conflicts are constraint violations for scripting purposes.
      if (report.find("VIOLATED\t") != std::string::npos ||
          report.find("INCONSISTENT\t") != std::string::npos)
        return CG_ERR_CONSTRAINT;
      return 0;
    }

    if (*tags) {
      auto g = load_graph(graph_path);
      auto index = read_text(index_path);
      if (export_path.empty()) {
        if (tag_list.empty())
          throw Usage{"tags needs --analyzer-export or --tags"};
        auto csv = join(tag_list);
        char* out = nullptr;
        check(cg_tags_lookup(g.get(), index.c_str(), csv.c_str(), &out));
        std::cout << take(out);
        return 0;
      }
      auto exported = read_text(export_path);
      char* report = nullptr;
      char* exercises = nullptr;
      check(cg_tags_process_export(g.get(), index.c_str(), exported.c_str(),
                                   make_exercises ? 1 : 0, &report, &exercises));
      std::cout << take(report);
      auto generated = take(exercises);
      if (make_exercises)
        write_text(out_file, generated);
      return 0;
    }

    if (*import) {
      auto xml = read_text(graph_path);
      cg_graph* g = nullptr;
      char* warnings = nullptr;
      check(cg_graph_import_graphml(xml.c_str(), colors.empty() ? nullptr : colors.c_str(),
                                    discipline.empty() ? nullptr : discipline.c_str(),
                                    ids_from_labels ? 1 : 0, &g, &warnings));
      Graph owned(g);
      std::istringstream in(take(warnings));
      for (std::string line; std::getline(in, line);)
        std::cerr << "warning\t" << line << "\n";
      char* native = nullptr;
      check(cg_graph_write_native(g, &native));
      auto text = take(native);
      if (out_file.empty()) {
        std::cout << text;
      } else {
        write_text(out_file, text);
        std::cout << "nodes\t" << cg_graph_node_count(g) << "\nedges\t" << cg_graph_edge_count(g)
                  << "\n";
      }
      return 0;
    }

    if (*serve) {
      if (data_dir.empty())
        throw Usage{"serve needs --data or CGRAPH_DATA_DIR"};
      cg_service* s = nullptr;
      check(cg_service_open(data_dir.c_str(), &s));
      ServiceHandle service(s);
      int bound = 0;
      check(cg_service_bind(s, host.c_str(), port, &bound));
      std::cout << "port\t" << bound << std::endl;
      std::cerr << "listening on http://" << host << ":" << bound << "\n";

      // Block the stop signals here so only the waiter thread receives them.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      running_service = s;
      std::thread waiter([signals] {
        int sig = 0;
        sigwait(&signals, &sig);
        cg_service_stop(running_service);
      });
      waiter.detach();
      check(cg_service_run(s));
      return 0;
    }
  } catch (const Failure& f) {
    return f.status;
  } catch (const Usage& u) {
    std::cerr << "error: " << u.message << "\n";
    return CG_ERR_USAGE;
  }
  return CG_ERR_USAGE;
}
