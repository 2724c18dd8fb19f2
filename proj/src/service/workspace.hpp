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
#include "core/interop.hpp"
#include "core/sequencing.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace curriculum {

struct GraphSummary {
  std::string id;
  int version = 0; // latest
  std::vector<int> versions;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

/// On-disk state behind the service:
///   graphs/<id>/v<N>.graph     native format, one file per version
///   plans/<plan id>.plan       plan manifests
///   progress/<student>.progress
///   popularity.txt
///   content/manifest.tsv       optional content store
///   exercises/<graph>.ex       optional exercise pool per graph
///   tags/<graph>.tsv           optional analyzer tag index per graph
/// Reads run concurrently; each mutable file has a single writer at a time.
class Workspace {
public:
  using Clock = std::function<std::int64_t()>;

  explicit Workspace(std::filesystem::path root, Clock clock = {});

  const std::filesystem::path& root() const { return root_; }
  std::int64_t now() const { return clock_(); }

  std::vector<GraphSummary> graphs() const;
  /// Latest version when `version` is absent. Throws NOT_FOUND.
  std::shared_ptr<const CurriculumGraph> graph(const std::string& id,
                                               std::optional<int> version = {}) const;
  int latest_version(const std::string& id) const;

  struct StoredGraph {
    std::string id;
    int version = 0;
    ValidationReport report;
  };
  /// Validates, assigns the next version of `g.discipline` and persists.
  StoredGraph store_graph(CurriculumGraph g);

  struct SavedPlan {
    BookPlan plan;
    bool created = false;
  };
  /// Idempotent by plan id. Adoption is recorded only on first creation.
  SavedPlan save_plan(const BookPlan& plan, bool record_adoption);
  BookPlan plan(const std::string& id) const;
  std::vector<std::string> plan_ids() const;

  ProgressRecord progress(const std::string& student) const;
  ProgressRecord update_progress(const std::string& student, const std::string& graph_id,
                                 const std::string& node, Mastery status);
  std::vector<std::string> students() const;

  PopularityStore popularity() const;

  const ContentStore& content() const { return content_; }
  std::vector<Exercise> exercises(const std::string& graph_id) const;
  /// Adds exercises not already present (by id); returns the full pool.
  std::vector<Exercise> add_exercises(const std::string& graph_id, std::span<const Exercise> extra);
  std::optional<TagIndex> tags(const std::string& graph_id) const;

  /// Canonical text describing the persisted index (graphs with content
  /// digests, plans, students, popularity). Equal before and after reload.
  std::string index_digest() const;

private:
  std::filesystem::path root_;
  Clock clock_;

  mutable std::shared_mutex graphs_mutex_;
  std::map<std::string, std::map<int, std::shared_ptr<const CurriculumGraph>>> graphs_;

  mutable std::mutex plans_mutex_;
  std::map<std::string, BookPlan> plans_;

  mutable std::mutex students_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> student_locks_;

  mutable std::mutex popularity_mutex_;
  PopularityStore popularity_;

  mutable std::mutex exercises_mutex_;

  ContentStore content_;

  std::mutex& student_lock(const std::string& student);
  void load();
};

} // namespace curriculum
