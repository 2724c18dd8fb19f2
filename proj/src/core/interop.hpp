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
#include "core/closure.hpp"
#include "core/sequencing.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace curriculum {

/// Required edge between two disciplines, in namespaced ids.
struct CrossEdge {
  std::string tail;
  std::string head;

  auto operator<=>(const CrossEdge&) const = default;
};

/// `cross <tail> -> <head>` lines; `#` comments.
std::vector<CrossEdge> parse_cross_edges(std::string_view text);

/// "discipline:id".
std::string namespaced(std::string_view discipline, std::string_view id);

struct MergeOptions {
  /// Defaults to the input disciplines joined with '-'.
  std::string discipline;
};

/// Namespaces every node, cluster and group by its discipline, unions the
/// edges and adds the cross edges. A cycle across disciplines throws a
/// Constraint error with code CYCLE and the witness path as ids.
CurriculumGraph merge_graphs(std::span<const CurriculumGraph> graphs,
                             std::span<const CrossEdge> cross, const MergeOptions& options = {});

/// Discipline owning a node of a merged graph (from metadata "merged_from"),
/// or empty when the graph is not a merge.
std::string discipline_of(const CurriculumGraph& merged, std::string_view id);

/// Edges whose endpoints belong to different disciplines, sorted.
std::vector<CrossEdge> cross_edges_of(const CurriculumGraph& merged);

using DisciplineOrders = std::map<std::string, std::vector<std::string>>;
/// discipline -> order index -> week.
using Calendar = std::map<std::string, std::map<std::size_t, long long>>;

/// `discipline<TAB>n1,n2,...`
DisciplineOrders parse_orders(std::string_view text);
/// `discipline<TAB>index<TAB>week`
Calendar parse_calendar(std::string_view text);

enum class SyncStatus { Satisfiable, Violated, Inconsistent, Unscheduled };
std::string_view to_string(SyncStatus s);

struct SyncFinding {
  CrossEdge edge;
  SyncStatus status = SyncStatus::Satisfiable;
  std::optional<std::size_t> tail_index; // position in the tail discipline's order
  std::optional<std::size_t> head_index;
  /// Earliest position in the head discipline's order whose topic depends
  /// on the tail; the tail discipline must have covered the tail by then.
  std::optional<std::size_t> deadline;
  std::optional<long long> tail_week;
  std::optional<long long> head_week;
  std::string detail;
};

/// One finding per cross edge, sorted by edge. Orders may use plain or
/// namespaced ids; each must respect its own discipline's edges.
std::vector<SyncFinding> sync_report(const CurriculumGraph& merged, const DisciplineOrders& orders,
                                     const Calendar* calendar = nullptr);

/// Analyzer tag -> nodes.
class TagIndex {
public:
  void add(std::string tag, std::vector<std::string> nodes);
  const std::vector<std::string>* find(std::string_view tag) const;
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }

private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

/// `tag<TAB>node[,node...]`
TagIndex parse_tag_index(std::string_view text);
/// Throws on unknown nodes.
void validate_tag_index(const TagIndex& index, const CurriculumGraph& g);

struct CompetencyReport {
  std::vector<std::string> tags; // normalized, deduplicated, input order
  std::set<std::string> direct_nodes;
  std::vector<std::string> unknown_tags;
  ClosureResult closure;
};

/// Throws NO_MATCH when no tag is known.
CompetencyReport competency_lookup(const TagIndex& index, std::span<const std::string> tags,
                                   const CurriculumGraph& g,
                                   const ClosurePolicy& policy = ClosurePolicy::minimal());

/// External exercise over the direct nodes; the id hashes the sorted tags
/// and the prompt token.
Exercise register_exercise_from_tags(const TagIndex& index, std::span<const std::string> tags,
                                     const std::string& prompt_ref, const CurriculumGraph& g);

struct AnalyzedForm {
  std::string form;
  std::vector<std::string> tags;
  int line = 0;
};

/// `form<TAB>tag[,tag...]`, one form per line.
std::vector<AnalyzedForm> parse_analyzer_export(std::string_view text);

/// Prompt token for an analyzed form: `form:<form>` with blanks folded.
std::string form_prompt_ref(std::string_view form);

struct FormOutcome {
  AnalyzedForm form;
  std::optional<CompetencyReport> report;
  std::optional<Exercise> exercise;
  std::string error; // NO_MATCH etc.
};

/// Looks up every form, optionally generating one exercise per matched form.
std::vector<FormOutcome> process_analyzer_export(const TagIndex& index,
                                                 std::span<const AnalyzedForm> forms,
                                                 const CurriculumGraph& g, bool make_exercises);

} // namespace curriculum
