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
#include "core/sequencing.hpp"

#include "core/text.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

namespace curriculum {

namespace {

/// The closure's induced subgraph over local indices (ascending id order).
struct Induced {
  std::vector<std::string> ids;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> indeg;

  explicit Induced(const ClosureResult& c) : ids(c.nodes.begin(), c.nodes.end()) {
    out.resize(ids.size());
    indeg.assign(ids.size(), 0);
    for (const auto& e : c.induced_edges) {
      auto t = local(e.tail);
      auto h = local(e.head);
      if (!t || !h)
        throw Error(ErrorCategory::Internal, "CORRUPT_CLOSURE",
                    "induced edge " + describe(e) + " leaves the closure", {e.tail, e.head});
      out[*t].push_back(*h);
      ++indeg[*h];
    }
  }

  std::optional<std::size_t> local(const std::string& id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id)
      return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
  }
};

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : w)
      h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  if (a >= limit || b >= limit || a + b >= limit || a + b < a)
    return limit;
  return a + b;
}

} // namespace

Linearization topological_order(const ClosureResult& closure) {
  Induced g(closure);
  auto indeg = g.indeg;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < g.ids.size(); ++i)
    if (indeg[i] == 0)
      ready.push(i);
  Linearization lin;
  while (!ready.empty()) {
    auto u = ready.top();
    ready.pop();
    lin.nodes.push_back(g.ids[u]);
    for (auto v : g.out[u])
      if (--indeg[v] == 0)
        ready.push(v);
  }
  if (lin.nodes.size() != g.ids.size())
    throw Error(ErrorCategory::Internal, "CORRUPT_CLOSURE", "closure contains a cycle");
  return lin;
}

OrderCheck is_valid_order(const ClosureResult& closure, std::span<const std::string> order) {
  OrderCheck check;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!closure.nodes.count(order[i])) {
      check.defect = OrderDefect::NotPermutation;
      check.detail = "'" + order[i] + "' is not in the closure";
      return check;
    }
    if (!pos.emplace(order[i], i).second) {
      check.defect = OrderDefect::NotPermutation;
      check.detail = "'" + order[i] + "' appears more than once";
      return check;
    }
  }
  if (pos.size() != closure.nodes.size()) {
    for (const auto& n : closure.nodes)
      if (!pos.count(n)) {
        check.defect = OrderDefect::NotPermutation;
        check.detail = "'" + n + "' is missing";
        return check;
      }
  }
  std::map<std::string, std::vector<const PrerequisiteEdge*>> into;
  for (const auto& e : closure.induced_edges)
    into[e.head].push_back(&e);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = into.find(order[i]);
    if (it == into.end())
      continue;
    for (const auto* e : it->second) {
      if (pos.at(e->tail) > i) {
        check.defect = OrderDefect::EdgeViolation;
        check.violated = *e;
        check.detail = "'" + e->head + "' comes before its prerequisite '" + e->tail + "'";
        return check;
      }
    }
  }
  check.valid = true;
  return check;
}

LinearizationSet all_linearizations(const ClosureResult& closure, std::size_t cap) {
  if (cap == 0)
    throw Error(ErrorCategory::Usage, "INVALID_CAP", "cap must be positive");
  Induced g(closure);
  const auto n = g.ids.size();
  auto indeg = g.indeg;
  std::vector<char> placed(n, 0);
  std::vector<std::size_t> current;
  LinearizationSet out;
  bool done = false;

  std::function<void()> extend = [&]() {
    if (done)
      return;
    if (current.size() == n) {
      if (out.orders.size() == cap) {
        out.truncated = true;
        done = true;
        return;
      }
      Linearization lin;
      for (auto v : current)
        lin.nodes.push_back(g.ids[v]);
      out.orders.push_back(std::move(lin));
      return;
    }
    for (std::size_t v = 0; v < n && !done; ++v) {
      if (placed[v] || indeg[v] != 0)
        continue;
      placed[v] = 1;
      current.push_back(v);
      for (auto w : g.out[v])
        --indeg[w];
      extend();
      for (auto w : g.out[v])
        ++indeg[w];
      current.pop_back();
      placed[v] = 0;
    }
  };
  extend();
  return out;
}

LinearizationCount count_linearizations(const ClosureResult& closure, std::uint64_t cap) {
  if (cap == 0)
    throw Error(ErrorCategory::Usage, "INVALID_CAP", "cap must be positive");
  cap = std::min(cap, std::numeric_limits<std::uint64_t>::max() - 1);
  const std::uint64_t limit = cap + 1;
  Induced g(closure);
  const auto n = g.ids.size();
  auto indeg = g.indeg;
  std::vector<std::uint64_t> placed((n + 63) / 64, 0);
  std::size_t placed_count = 0;

  // Counts depend only on the set already placed, so memoize on it.
  constexpr std::size_t kMemoLimit = 1 << 22;
  std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, WordsHash> memo;

  auto is_placed = [&](std::size_t v) { return (placed[v / 64] >> (v % 64)) & 1u; };
  auto flip = [&](std::size_t v) { placed[v / 64] ^= (std::uint64_t{1} << (v % 64)); };

  std::function<std::uint64_t()> count = [&]() -> std::uint64_t {
    if (placed_count == n)
      return 1;
    if (auto it = memo.find(placed); it != memo.end())
      return it->second;
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v)
      if (!is_placed(v) && indeg[v] == 0)
        ready.push_back(v);
    std::uint64_t total = 0;
    if (ready.size() == n - placed_count) {
      // The remaining nodes are pairwise unconstrained.
      total = 1;
      for (std::uint64_t k = 2; k <= ready.size() && total < limit; ++k)
        total = (total > limit / k) ? limit : std::min(limit, total * k);
    } else {
      for (auto v : ready) {
        flip(v);
        ++placed_count;
        for (auto w : g.out[v])
          --indeg[w];
        total = sat_add(total, count(), limit);
        for (auto w : g.out[v])
          ++indeg[w];
        --placed_count;
        flip(v);
        if (total >= limit)
          break;
      }
    }
    if (memo.size() < kMemoLimit)
      memo.emplace(placed, total);
    return total;
  };
  auto total = count();
  if (total >= limit)
    return {cap, false};
  return {total, true};
}

void RankingWeights::check() const {
  for (double w : {time, popularity, coherence})
    if (!std::isfinite(w) || w < 0)
      throw Error(ErrorCategory::Usage, "INVALID_WEIGHTS", "weights must be finite and >= 0");
  if (time <= 0 && popularity <= 0 && coherence <= 0)
    throw Error(ErrorCategory::Usage, "INVALID_WEIGHTS", "at least one weight must be positive");
}

void PopularityStore::record_adoption(const Linearization& lin) {
  for (std::size_t i = 0; i + 1 < lin.nodes.size(); ++i)
    ++pairs_[{lin.nodes[i], lin.nodes[i + 1]}];
  ++books_;
}

std::uint64_t PopularityStore::pair_count(const std::string& tail, const std::string& head) const {
  auto it = pairs_.find({tail, head});
  return it == pairs_.end() ? 0 : it->second;
}

std::string PopularityStore::serialize() const {
  std::string out = "books " + std::to_string(books_) + "\n";
  for (const auto& [pair, count] : pairs_)
    out += "pair " + pair.first + " " + pair.second + " " + std::to_string(count) + "\n";
  return out;
}

PopularityStore PopularityStore::parse(std::string_view content) {
  PopularityStore store;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split_ws(line);
    auto fail = [&](const std::string& why) {
      return Error(ErrorCategory::Validation, "POPULARITY_SYNTAX",
                   "popularity line " + std::to_string(line_no) + ": " + why);
    };
    if (f[0] == "books" && f.size() == 2) {
      auto n = text::parse_int(f[1]);
      if (!n || *n < 0)
        throw fail("bad book count");
      store.books_ = static_cast<std::uint64_t>(*n);
    } else if (f[0] == "pair" && f.size() == 4) {
      auto n = text::parse_int(f[3]);
      if (!n || *n < 0)
        throw fail("bad pair count");
      store.pairs_[{std::string(f[1]), std::string(f[2])}] = static_cast<std::uint64_t>(*n);
    } else {
      throw fail("expected 'books <n>' or 'pair <tail> <head> <n>'");
    }
  }
  return store;
}

PopularityStore PopularityStore::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    return {};
  return parse(text::read_file(path));
}

void PopularityStore::save(const std::filesystem::path& path) const {
  text::write_file_atomic(path, serialize());
}

PopularityStore record_adoption(PopularityStore store, const Linearization& lin) {
  store.record_adoption(lin);
  return store;
}

ScoreBreakdown score_ordering(const Linearization& lin, const CurriculumGraph& g,
                              const RankingWeights& weights, const PopularityStore& pop) {
  weights.check();
  GraphIndex idx(g);
  ScoreBreakdown s;
  long long minutes = 0;
  for (const auto& id : lin.nodes)
    minutes += idx.node(idx.at(id)).duration_minutes;
  s.time = 1.0 / (1.0 + static_cast<double>(minutes));

  std::uint64_t pair_sum = 0;
  std::size_t same_cluster = 0;
  for (std::size_t i = 0; i + 1 < lin.nodes.size(); ++i) {
    pair_sum += pop.pair_count(lin.nodes[i], lin.nodes[i + 1]);
    const auto& a = idx.node(idx.at(lin.nodes[i])).cluster;
    const auto& b = idx.node(idx.at(lin.nodes[i + 1])).cluster;
    if (!a.empty() && a == b)
      ++same_cluster;
  }
  s.popularity = static_cast<double>(pair_sum) / (1.0 + static_cast<double>(pop.book_count()));
  s.coherence = lin.nodes.size() > 1
                    ? static_cast<double>(same_cluster) / static_cast<double>(lin.nodes.size() - 1)
                    : 0.0;
  s.total = weights.time * s.time + weights.popularity * s.popularity +
            weights.coherence * s.coherence;
  return s;
}

std::vector<RankedOrdering> rank_orderings(std::vector<Linearization> lins,
                                           const CurriculumGraph& g,
                                           const RankingWeights& weights,
                                           const PopularityStore& pop) {
  std::vector<RankedOrdering> ranked;
  ranked.reserve(lins.size());
  for (auto& lin : lins) {
    auto score = score_ordering(lin, g, weights, pop);
    ranked.push_back({std::move(lin), score});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.score.total != b.score.total)
      return a.score.total > b.score.total;
    return a.order < b.order;
  });
  // Runs of scores within rounding noise of the run's best are ties.
  constexpr double kRelTie = 1e-9;
  std::size_t start = 0;
  while (start < ranked.size()) {
    const double head = ranked[start].score.total;
    std::size_t end = start + 1;
    while (end < ranked.size() &&
           head - ranked[end].score.total <= kRelTie * std::max(1.0, std::fabs(head)))
      ++end;
    std::stable_sort(ranked.begin() + static_cast<std::ptrdiff_t>(start),
                     ranked.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const auto& a, const auto& b) { return a.order < b.order; });
    start = end;
  }
  return ranked;
}

} // namespace curriculum
