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

#include "core/graph.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace curriculum {

/// How a backward visit treats optional edges and alternative groups.
struct ClosurePolicy {
  enum class Resolution {
    /// Member whose own closure is smallest; ties to the smaller tail id.
    MinimalClosure,
    /// Earliest entry of `preferred` that is a member tail, else minimal.
    PreferredList,
    /// `choices` must cover every group reached; missing ones are reported.
    Explicit,
  };

  bool include_optional = false;
  Resolution resolution = Resolution::MinimalClosure;
  std::vector<std::string> preferred;
  /// group id -> chosen member tail. Binding in every mode; under Explicit
  /// they are the only source of decisions.
  std::map<std::string, std::string> choices;

  static ClosurePolicy minimal(bool include_optional = false);
  static ClosurePolicy prefer(std::vector<std::string> preferred, bool include_optional = false);
  static ClosurePolicy explicit_choices(std::map<std::string, std::string> choices,
                                        bool include_optional = false);
};

struct ClosureResult {
  std::set<std::string> targets;
  std::set<std::string> nodes;
  /// Every graph edge with both endpoints in `nodes`, sorted.
  std::vector<PrerequisiteEdge> induced_edges;
  /// Chosen member for every group whose head is in `nodes`.
  std::map<std::string, PrerequisiteEdge> resolved_groups;
  /// Optional in-edges of `nodes` whose tail stayed out.
  std::vector<PrerequisiteEdge> skipped_optional;

  bool operator==(const ClosureResult&) const = default;
};

/// An alternative group the caller has to decide.
struct ChoicePoint {
  std::string group;
  std::string head;
  std::vector<PrerequisiteEdge> members;
  /// Minimal-policy closure size of each member's tail, same order as members.
  std::vector<std::size_t> closure_sizes;
};

/// Explicit resolution reached groups without a supplied choice.
class UnresolvedChoiceError : public Error {
public:
  explicit UnresolvedChoiceError(std::vector<ChoicePoint> points);
  const std::vector<ChoicePoint>& choice_points() const noexcept { return points_; }

private:
  std::vector<ChoicePoint> points_;
};

/// Targets plus every predecessor demanded by required edges, by followed
/// optional edges and by the chosen member of each group reached.
ClosureResult predecessor_closure(const CurriculumGraph& g, const std::set<std::string>& targets,
                                  const ClosurePolicy& policy);

struct ClosureEnumeration {
  std::vector<ClosureResult> closures;
  bool truncated = false;
};

/// Every distinct closure reachable by varying the choice of each group
/// reached, ordered by size then node list, cut at `cap`.
ClosureEnumeration enumerate_closures(const CurriculumGraph& g,
                                      const std::set<std::string>& targets,
                                      bool include_optional, std::size_t cap);

/// Rebuilds a ClosureResult for a known node set: induced edges, skipped
/// optional edges and the groups restricted to `nodes`.
ClosureResult make_closure(const CurriculumGraph& g, std::set<std::string> targets,
                           std::set<std::string> nodes,
                           const std::map<std::string, PrerequisiteEdge>& resolved);

/// First unmet obligation of a node set: a required edge whose tail is
/// absent, or a group reached with no member tail present. `present` is the
/// set obligations may be discharged by; `nodes` the set that must be sound.
struct MissingPrerequisite {
  std::string node;     // the dependent node
  std::string missing;  // absent tail, or the group id
  std::optional<PrerequisiteEdge> edge;
  bool group = false;
};
std::optional<MissingPrerequisite>
first_missing_prerequisite(const CurriculumGraph& g, const std::vector<std::string>& nodes,
                           const std::set<std::string>& present);

} // namespace curriculum
