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

#include "core/closure.hpp"
#include "core/sequencing.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace curriculum {

struct Exercise {
  enum class Kind { NodeLocal, External };

  std::string id;
  Kind kind = Kind::NodeLocal;
  /// NodeLocal: exactly the owning node. External: the competency set,
  /// sorted and unique.
  std::vector<std::string> nodes;
  std::string prompt_ref;
  std::optional<int> difficulty; // 1..5

  bool operator==(const Exercise&) const = default;
};

/// Throws on unknown nodes, duplicate ids, empty competency sets and
/// out-of-range difficulty.
void validate_exercises(const CurriculumGraph& g, std::span<const Exercise> exercises);

struct BookItem {
  enum class Kind { Topic, Exercise };
  Kind kind = Kind::Topic;
  std::string ref; // node id or exercise id

  bool operator==(const BookItem&) const = default;
};

struct OmittedExercise {
  std::string exercise;
  std::vector<std::string> missing; // competency nodes absent from the order

  bool operator==(const OmittedExercise&) const = default;
};

struct Placement {
  std::vector<BookItem> items;
  std::vector<OmittedExercise> omitted;
};

/// After each topic: its node-local exercises, then the external exercises
/// whose last competency it is. Ties by (difficulty, id), unrated last.
/// External exercises with a competency outside the order are omitted.
Placement place_exercises(const Linearization& order, std::span<const Exercise> exercises);

struct ContentDoc {
  std::string title;
  std::string body; // lightweight markup

  bool operator==(const ContentDoc&) const = default;
};

/// Token -> document. Tokens of the form `form:<word>` resolve to a
/// synthesized analysis prompt for that word.
class ContentStore {
public:
  void add(std::string token, ContentDoc doc);
  std::optional<ContentDoc> find(const std::string& token) const;
  bool contains(const std::string& token) const { return find(token).has_value(); }
  std::size_t size() const { return docs_.size(); }

private:
  std::map<std::string, ContentDoc> docs_;
};

enum class AuthorRole { Teacher, Student };
std::string_view to_string(AuthorRole role);
std::optional<AuthorRole> parse_author_role(std::string_view s);

struct GraphRef {
  std::string id;
  std::string version;

  bool operator==(const GraphRef&) const = default;
};

/// The personalized ebook skeleton.
struct BookPlan {
  std::string id;
  GraphRef graph;
  std::string title;
  ClosureResult closure;
  Linearization order;
  std::vector<BookItem> items;
  /// Candidate exercises supplied at assembly; placement is recomputed
  /// from these after edits.
  std::vector<Exercise> exercises;
  std::vector<OmittedExercise> omitted;
  /// Mastered prerequisites cited without content (review books).
  std::vector<std::string> stubs;
  std::int64_t created_at = 0;
  AuthorRole author_role = AuthorRole::Teacher;

  bool operator==(const BookPlan&) const = default;
};

struct PlanMeta {
  AuthorRole author_role = AuthorRole::Teacher;
  std::int64_t created_at = 0;
  std::string title; // defaults to the discipline name
};

/// Content-hash identifier over graph ref, order, stubs and exercise ids.
std::string plan_id(const GraphRef& graph, const Linearization& order,
                    std::span<const std::string> stubs, std::span<const Exercise> exercises);

BookPlan assemble_book(const CurriculumGraph& g, const ClosureResult& closure,
                       const Linearization& order, std::span<const Exercise> exercises,
                       const ContentStore& content, const PlanMeta& meta,
                       std::span<const std::string> stubs = {});

/// Single markup document: title block, contents, stub preamble, one
/// section per topic with exercises inline, omissions appendix.
std::string render_book(const CurriculumGraph& g, const BookPlan& plan,
                        const ContentStore& content);

/// Line-oriented manifest with a fixed field order.
std::string write_plan_manifest(const BookPlan& plan);
/// Parses a manifest; closure details are rebuilt against `g`, which must
/// be the version the plan pins.
BookPlan parse_plan_manifest(std::string_view text, const CurriculumGraph& g);

enum class Mastery { Unseen, InProgress, Mastered, Gap };
std::string_view to_string(Mastery m);
std::optional<Mastery> parse_mastery(std::string_view s);

struct ProgressEntry {
  Mastery status = Mastery::Unseen;
  std::int64_t updated_at = 0;

  bool operator==(const ProgressEntry&) const = default;
};

struct ProgressRecord {
  std::string student;
  std::string graph;
  std::map<std::string, ProgressEntry> statuses;

  Mastery status_of(const std::string& node) const;
  bool operator==(const ProgressRecord&) const = default;
};

ProgressRecord update_progress(ProgressRecord record, const CurriculumGraph& g,
                               const std::string& node, Mastery status, std::int64_t now);
std::string write_progress(const ProgressRecord& record);
ProgressRecord parse_progress(std::string_view text);

struct ReviewOptions {
  ClosurePolicy policy;
  /// Accept targets that are not marked Gap.
  bool override_status = false;
};

struct ReviewPlan {
  ClosureResult closure; // restricted to the full (re-taught) nodes
  Linearization order;
  std::vector<std::string> stubs;
};

/// Closure of the gaps minus mastered topics; a mastered topic that a
/// retained topic depends on directly stays as a stub.
ReviewPlan review_book(const CurriculumGraph& g, const ProgressRecord& progress,
                       const std::set<std::string>& gap_targets, const ReviewOptions& options);

struct EditOp {
  enum class Kind { Insert, Remove, Move };
  Kind kind = Kind::Move;
  std::string node;
  std::size_t position = 0; // target index in the edited order (Insert, Move)
};

/// `insert <node> <pos>`, `remove <node>`, `move <node> <pos>`, one per line
/// or separated by ';'.
std::vector<EditOp> parse_edit_ops(std::string_view text);

struct EditRejection {
  std::string code; // ORDER_VIOLATION, MISSING_PREREQUISITE, INVALID_EDIT
  std::string message;
  std::optional<PrerequisiteEdge> edge;
  std::string missing;
};

struct EditOutcome {
  std::optional<BookPlan> plan;
  std::optional<EditRejection> rejection;

  bool accepted() const { return plan.has_value(); }
};

/// Applies the ops to a copy of the plan and re-validates it. The input
/// plan is never modified; a rejected edit reports why.
EditOutcome edit_plan_in_itinere(const CurriculumGraph& g, const BookPlan& plan,
                                 std::span<const EditOp> ops,
                                 const ContentStore* content = nullptr);

} // namespace curriculum
