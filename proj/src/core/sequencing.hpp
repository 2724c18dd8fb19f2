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

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curriculum {

/// A teaching order over a closure's nodes.
struct Linearization {
  std::vector<std::string> nodes;

  auto operator<=>(const Linearization&) const = default;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1000;
inline constexpr std::uint64_t kDefaultCountCap = 1'000'000;

/// Kahn order; the smallest ready id is always emitted first.
Linearization topological_order(const ClosureResult& closure);

enum class OrderDefect { None, NotPermutation, EdgeViolation };

struct OrderCheck {
  bool valid = false;
  OrderDefect defect = OrderDefect::None;
  std::optional<PrerequisiteEdge> violated; // set for EdgeViolation
  std::string detail;
};

/// Valid iff `order` is a permutation of the closure nodes in which every
/// induced edge points forward. Reports the first violation in scan order.
OrderCheck is_valid_order(const ClosureResult& closure, std::span<const std::string> order);

struct LinearizationSet {
  std::vector<Linearization> orders; // lexicographically ascending
  bool truncated = false;
};

LinearizationSet all_linearizations(const ClosureResult& closure,
                                    std::size_t cap = kDefaultEnumerationCap);

struct LinearizationCount {
  std::uint64_t count = 0;
  bool exact = true;
};

/// Exact count when it does not exceed `cap`; otherwise {cap, false}.
LinearizationCount count_linearizations(const ClosureResult& closure,
                                        std::uint64_t cap = kDefaultCountCap);

struct RankingWeights {
  double time = 1.0;
  double popularity = 1.0;
  double coherence = 1.0;

  /// Throws unless all weights are finite, non-negative and one is positive.
  void check() const;
};

/// Adjacent-pair counts over adopted books.
class PopularityStore {
public:
  using Pair = std::pair<std::string, std::string>;

  void record_adoption(const Linearization& lin);
  std::uint64_t pair_count(const std::string& tail, const std::string& head) const;
  std::uint64_t book_count() const { return books_; }
  const std::map<Pair, std::uint64_t>& pairs() const { return pairs_; }

  /// `books <n>` then `pair <tail> <head> <count>` lines, sorted.
  std::string serialize() const;
  static PopularityStore parse(std::string_view text);
  static PopularityStore load(const std::filesystem::path& path); // missing file -> empty
  void save(const std::filesystem::path& path) const;

  bool operator==(const PopularityStore&) const = default;

private:
  std::map<Pair, std::uint64_t> pairs_;
  std::uint64_t books_ = 0;
};

/// Returns `store` with `lin` recorded.
PopularityStore record_adoption(PopularityStore store, const Linearization& lin);

struct ScoreBreakdown {
  double time = 0;       // 1 / (1 + total minutes)
  double popularity = 0; // adjacent-pair counts / (1 + books)
  double coherence = 0;  // same-cluster adjacencies / (len - 1)
  double total = 0;
};

ScoreBreakdown score_ordering(const Linearization& lin, const CurriculumGraph& g,
                              const RankingWeights& weights, const PopularityStore& pop);

struct RankedOrdering {
  Linearization order;
  ScoreBreakdown score;
};

/// Descending score; scores equal up to rounding noise fall back to the
/// lexicographic node list.
std::vector<RankedOrdering> rank_orderings(std::vector<Linearization> lins,
                                           const CurriculumGraph& g,
                                           const RankingWeights& weights,
                                           const PopularityStore& pop);

} // namespace curriculum
