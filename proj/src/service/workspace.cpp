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
#include "service/workspace.hpp"

#include "core/ingest.hpp"
#include "core/text.hpp"

#include <algorithm>
#include <ctime>
#include <regex>
#include <sstream>

namespace curriculum {

namespace fs = std::filesystem;

namespace {

Error not_found(const std::string& what, const std::string& id) {
  return Error(ErrorCategory::Io, "NOT_FOUND", what + " '" + id + "' not found", {id});
}

void require_token(const std::string& id, const std::string& what) {
  if (!text::is_token(id))
    throw Error(ErrorCategory::Usage, "INVALID_ID", what + " '" + id + "' is not a valid token",
                {id});
}

bool is_plan_id(const std::string& id) {
  static const std::regex re("book-[0-9a-f]{16}");
  return std::regex_match(id, re);
}

} // namespace

Workspace::Workspace(fs::path root, Clock clock) : root_(std::move(root)), clock_(std::move(clock)) {
  if (!clock_)
    clock_ = [] { return static_cast<std::int64_t>(std::time(nullptr)); };
  std::error_code ec;
  for (const char* dir : {"graphs", "plans", "progress", "exercises", "tags", "content"}) {
    fs::create_directories(root_ / dir, ec);
    if (ec)
      throw Error(ErrorCategory::Io, "IO_ERROR",
                  "cannot create " + (root_ / dir).string() + ": " + ec.message());
  }
  load();
}

void Workspace::load() {
  static const std::regex version_file("v([0-9]+)\\.graph");
  for (const auto& dir : fs::directory_iterator(root_ / "graphs")) {
    if (!dir.is_directory())
      continue;
    auto id = dir.path().filename().string();
    for (const auto& file : fs::directory_iterator(dir.path())) {
      std::smatch m;
      auto name = file.path().filename().string();
      if (!std::regex_match(name, m, version_file))
        continue;
      auto doc = parse_native(text::read_file(file.path()));
      if (!doc.report.ok())
        throw InvalidGraphError(std::move(doc.report));
      graphs_[id][std::stoi(m[1])] = std::make_shared<const CurriculumGraph>(std::move(doc.graph));
    }
  }
  for (const auto& file : fs::directory_iterator(root_ / "plans")) {
    if (file.path().extension() != ".plan")
      continue;
    auto content = text::read_file(file.path());
    // The graph line pins the version the manifest must be parsed against.
    std::string gid;
    int version = 0;
    for (auto line : text::split(content, '\n')) {
      auto f = text::split_ws(line);
      if (f.size() == 3 && f[0] == "graph") {
        gid = f[1];
        version = static_cast<int>(text::parse_int(f[2]).value_or(0));
        break;
      }
    }
    auto g = graph(gid, version);
    auto plan = parse_plan_manifest(content, *g);
    plans_.emplace(plan.id, std::move(plan));
  }
  popularity_ = PopularityStore::load(root_ / "popularity.txt");
  if (fs::exists(root_ / "content" / "manifest.tsv"))
    content_ = load_content_store(root_ / "content" / "manifest.tsv");
}

std::vector<GraphSummary> Workspace::graphs() const {
  std::shared_lock lock(graphs_mutex_);
  std::vector<GraphSummary> out;
  for (const auto& [id, versions] : graphs_) {
    if (versions.empty())
      continue;
    GraphSummary s;
    s.id = id;
    for (const auto& [v, g] : versions)
      s.versions.push_back(v);
    s.version = versions.rbegin()->first;
    s.nodes = versions.rbegin()->second->nodes.size();
    s.edges = versions.rbegin()->second->edges.size();
    out.push_back(std::move(s));
  }
  return out;
}

std::shared_ptr<const CurriculumGraph> Workspace::graph(const std::string& id,
                                                        std::optional<int> version) const {
  std::shared_lock lock(graphs_mutex_);
  auto it = graphs_.find(id);
  if (it == graphs_.end() || it->second.empty())
    throw not_found("graph", id);
  if (!version)
    return it->second.rbegin()->second;
  auto v = it->second.find(*version);
  if (v == it->second.end())
    throw not_found("graph version", id + "@" + std::to_string(*version));
  return v->second;
}

int Workspace::latest_version(const std::string& id) const {
  std::shared_lock lock(graphs_mutex_);
  auto it = graphs_.find(id);
  return it == graphs_.end() || it->second.empty() ? 0 : it->second.rbegin()->first;
}

Workspace::StoredGraph Workspace::store_graph(CurriculumGraph g) {
  auto report = validate_graph(g);
  if (!report.ok())
    throw InvalidGraphError(report);
  std::unique_lock lock(graphs_mutex_);
  auto& versions = graphs_[g.discipline];
  int version = versions.empty() ? 1 : versions.rbegin()->first + 1;
  g.metadata["version"] = std::to_string(version);
  auto dir = root_ / "graphs" / g.discipline;
  fs::create_directories(dir);
  text::write_file_atomic(dir / ("v" + std::to_string(version) + ".graph"), write_native(g));
  auto id = g.discipline;
  versions[version] = std::make_shared<const CurriculumGraph>(std::move(g));
  return {id, version, std::move(report)};
}

Workspace::SavedPlan Workspace::save_plan(const BookPlan& plan, bool record_adoption) {
  // Never persist a plan that does not serialize its own closure.
  auto check = is_valid_order(plan.closure, plan.order.nodes);
  if (!check.valid)
    throw Error(ErrorCategory::Validation, "ORDER_VIOLATION", check.detail);
  std::lock_guard lock(plans_mutex_);
  if (auto it = plans_.find(plan.id); it != plans_.end())
    return {it->second, false};
  text::write_file_atomic(root_ / "plans" / (plan.id + ".plan"), write_plan_manifest(plan));
  plans_.emplace(plan.id, plan);
  if (record_adoption) {
    std::lock_guard pop_lock(popularity_mutex_);
    auto next = curriculum::record_adoption(popularity_, plan.order);
    next.save(root_ / "popularity.txt");
    popularity_ = std::move(next);
  }
  return {plan, true};
}

BookPlan Workspace::plan(const std::string& id) const {
  std::lock_guard lock(plans_mutex_);
  auto it = is_plan_id(id) ? plans_.find(id) : plans_.end();
  if (it == plans_.end())
    throw not_found("book", id);
  return it->second;
}

std::vector<std::string> Workspace::plan_ids() const {
  std::lock_guard lock(plans_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, p] : plans_)
    out.push_back(id);
  return out;
}

std::mutex& Workspace::student_lock(const std::string& student) {
  std::lock_guard lock(students_mutex_);
  auto& slot = student_locks_[student];
  if (!slot)
    slot = std::make_unique<std::mutex>();
  return *slot;
}

ProgressRecord Workspace::progress(const std::string& student) const {
  require_token(student, "student id");
  auto path = root_ / "progress" / (student + ".progress");
  if (!fs::exists(path)) {
    ProgressRecord empty;
    empty.student = student;
    return empty;
  }
  return parse_progress(text::read_file(path));
}

ProgressRecord Workspace::update_progress(const std::string& student, const std::string& graph_id,
                                          const std::string& node, Mastery status) {
  require_token(student, "student id");
  auto g = graph(graph_id);
  std::lock_guard lock(student_lock(student));
  auto record = progress(student);
  record.student = student;
  record = curriculum::update_progress(std::move(record), *g, node, status, now());
  text::write_file_atomic(root_ / "progress" / (student + ".progress"), write_progress(record));
  return record;
}

std::vector<std::string> Workspace::students() const {
  std::vector<std::string> out;
  for (const auto& file : fs::directory_iterator(root_ / "progress"))
    if (file.path().extension() == ".progress")
      out.push_back(file.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

PopularityStore Workspace::popularity() const {
  std::lock_guard lock(popularity_mutex_);
  return popularity_;
}

std::vector<Exercise> Workspace::exercises(const std::string& graph_id) const {
  require_token(graph_id, "graph id");
  std::lock_guard lock(exercises_mutex_);
  auto path = root_ / "exercises" / (graph_id + ".ex");
  if (!fs::exists(path))
    return {};
  return parse_exercises(text::read_file(path));
}

std::vector<Exercise> Workspace::add_exercises(const std::string& graph_id,
                                               std::span<const Exercise> extra) {
  require_token(graph_id, "graph id");
  auto g = graph(graph_id);
  validate_exercises(*g, extra);
  std::lock_guard lock(exercises_mutex_);
  auto path = root_ / "exercises" / (graph_id + ".ex");
  std::vector<Exercise> pool;
  if (fs::exists(path))
    pool = parse_exercises(text::read_file(path));
  for (const auto& ex : extra)
    if (std::none_of(pool.begin(), pool.end(), [&](const auto& p) { return p.id == ex.id; }))
      pool.push_back(ex);
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  text::write_file_atomic(path, write_exercises(pool));
  return pool;
}

std::optional<TagIndex> Workspace::tags(const std::string& graph_id) const {
  require_token(graph_id, "graph id");
  auto path = root_ / "tags" / (graph_id + ".tsv");
  if (!fs::exists(path))
    return std::nullopt;
  return parse_tag_index(text::read_file(path));
}

std::string Workspace::index_digest() const {
  std::ostringstream out;
  {
    std::shared_lock lock(graphs_mutex_);
    for (const auto& [id, versions] : graphs_)
      for (const auto& [v, g] : versions)
        out << "graph " << id << " " << v << " " << g->nodes.size() << " " << g->edges.size()
            << " " << text::sha256_hex(write_native(*g)) << "\n";
  }
  {
    std::lock_guard lock(plans_mutex_);
    for (const auto& [id, p] : plans_)
      out << "plan " << id << " " << text::sha256_hex(write_plan_manifest(p)) << "\n";
  }
  for (const auto& s : students())
    out << "student " << s << " " << text::sha256_hex(write_progress(progress(s))) << "\n";
  out << "popularity " << text::sha256_hex(popularity().serialize()) << "\n";
  return out.str();
}

} // namespace curriculum
