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
#include "core/closure.hpp"
#include "core/ingest.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace curriculum;
using Set = std::set<std::string>;

namespace {

CurriculumGraph parse(const std::string& body) {
  auto doc = parse_native("graph t\n" + body);
  EXPECT_TRUE(doc.report.ok());
  return doc.graph;
}

// x -> c and y -> c form a group; y needs w.
const char* kGroup = "node c | C | - | 1 | -\nnode w | W | - | 1 | -\nnode x | X | - | 1 | -\n"
                     "node y | Y | - | 1 | -\ngroup g1 c\nedge x -> c required:g1\n"
                     "edge y -> c alt:g1\nedge w -> y\n";

// Soundness plus group satisfaction, as the closure invariants state them.
bool sound(const CurriculumGraph& g, const Set& nodes) {
  for (const auto& e : g.edges)
    if (nodes.count(e.head) && !e.grouped() && e.kind == EdgeKind::Required && !nodes.count(e.tail))
      return false;
  for (const auto& [gid, grp] : g.alt_groups) {
    if (!nodes.count(grp.head))
      continue;
    bool any = false;
    for (const auto& e : g.edges)
      any = any || (e.alt_group == gid && nodes.count(e.tail));
    if (!any)
      return false;
  }
  return true;
}

} // namespace

TEST(Closure, ChainTakesEverything) {
  auto r = predecessor_closure(cgtest::load_fixture("chain.graph"), {"c"}, ClosurePolicy::minimal());
  EXPECT_EQ(r.nodes, (Set{"a", "b", "c"}));
  EXPECT_EQ(r.targets, (Set{"c"}));
  EXPECT_EQ(r.induced_edges.size(), 2u);
}

TEST(Closure, OptionalSkippedByDefault) {
  auto g = parse("node a | A | - | 1 | -\nnode b | B | - | 1 | -\nnode c | C | - | 1 | -\n"
                 "edge a -> c\nedge b -> c optional\n");
  auto r = predecessor_closure(g, {"c"}, ClosurePolicy::minimal());
  EXPECT_EQ(r.nodes, (Set{"a", "c"}));
  ASSERT_EQ(r.skipped_optional.size(), 1u);
  EXPECT_EQ(r.skipped_optional[0].tail, "b");
  auto with = predecessor_closure(g, {"c"}, ClosurePolicy::minimal(true));
  EXPECT_EQ(with.nodes, (Set{"a", "b", "c"}));
  EXPECT_TRUE(with.skipped_optional.empty());
}

TEST(Closure, MinimalPicksSmallerMember) {
  auto g = parse(kGroup);
  auto r = predecessor_closure(g, {"c"}, ClosurePolicy::minimal());
  EXPECT_EQ(r.nodes, (Set{"c", "x"}));
  EXPECT_EQ(r.resolved_groups.at("g1").tail, "x");
}

TEST(Closure, PreferredAndExplicit) {
  auto g = parse(kGroup);
  auto p = predecessor_closure(g, {"c"}, ClosurePolicy::prefer({"zz", "y"}));
  EXPECT_EQ(p.nodes, (Set{"c", "w", "y"}));
  auto fallback = predecessor_closure(g, {"c"}, ClosurePolicy::prefer({"zz"}));
  EXPECT_EQ(fallback.nodes, (Set{"c", "x"}));
  auto e = predecessor_closure(g, {"c"}, ClosurePolicy::explicit_choices({{"g1", "y"}}));
  EXPECT_EQ(e.nodes, (Set{"c", "w", "y"}));
  // Pinned choices bind under the minimal policy too.
  auto pinned = ClosurePolicy::minimal();
  pinned.choices = {{"g1", "y"}};
  EXPECT_EQ(predecessor_closure(g, {"c"}, pinned).nodes, (Set{"c", "w", "y"}));
}

TEST(Closure, ExplicitErrors) {
  auto g = parse(kGroup);
  try {
    predecessor_closure(g, {"c"}, ClosurePolicy::explicit_choices({}));
    FAIL();
  } catch (const UnresolvedChoiceError& e) {
    EXPECT_EQ(e.code(), "UNRESOLVED_CHOICE");
    EXPECT_EQ(e.category(), ErrorCategory::Constraint);
    ASSERT_EQ(e.choice_points().size(), 1u);
    const auto& cp = e.choice_points()[0];
    EXPECT_EQ(cp.group, "g1");
    EXPECT_EQ(cp.head, "c");
    ASSERT_EQ(cp.members.size(), 2u);
    EXPECT_EQ(cp.closure_sizes, (std::vector<std::size_t>{1, 2}));
  }
  EXPECT_THROW(predecessor_closure(g, {"c"}, ClosurePolicy::explicit_choices({{"g1", "w"}})), Error);
  EXPECT_THROW(predecessor_closure(g, {"c"}, ClosurePolicy::explicit_choices({{"g9", "x"}})), Error);
  // A group that is never reached needs no choice.
  EXPECT_EQ(predecessor_closure(g, {"y"}, ClosurePolicy::explicit_choices({})).nodes,
            (Set{"w", "y"}));
}

TEST(Closure, BadTargets) {
  auto g = parse(kGroup);
  EXPECT_THROW(predecessor_closure(g, {}, ClosurePolicy::minimal()), Error);
  try {
    predecessor_closure(g, {"nope"}, ClosurePolicy::minimal());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "UNKNOWN_NODE");
  }
}

TEST(Closure, RejectsCyclicGraph) {
  auto doc = parse_native("graph t\nnode a | A | - | 1 | -\nnode b | B | - | 1 | -\n"
                          "edge a -> b\nedge b -> a\n");
  EXPECT_THROW(predecessor_closure(doc.graph, {"a"}, ClosurePolicy::minimal()), InvalidGraphError);
  EXPECT_THROW(enumerate_closures(doc.graph, {"a"}, false, 10), InvalidGraphError);
}

TEST(Closure, Latin32CausalClause) {
  auto g = cgtest::load_fixture("latin-32.graph");
  auto r = predecessor_closure(g, {"prop_causale"}, ClosurePolicy::minimal());
  EXPECT_EQ(r.nodes, (Set{"congiuntivo", "coniugazioni", "imperfetto", "indicativo_presente",
                          "parti_discorso", "prop_causale", "verbo_struttura"}));
  EXPECT_EQ(r.resolved_groups.at("g_causale").tail, "congiuntivo");
  auto t = predecessor_closure(g, {"prop_causale"},
                               ClosurePolicy::explicit_choices({{"g_causale", "prop_temporale"}}));
  EXPECT_EQ(t.nodes.size(), 8u);
  EXPECT_TRUE(t.nodes.count("coordinazione"));
  auto opt = predecessor_closure(g, {"prop_causale"}, ClosurePolicy::minimal(true));
  EXPECT_TRUE(opt.nodes.count("compl_mezzo"));
  EXPECT_TRUE(opt.nodes.count("accento")) << "optional accento -> prima_decl is followed too";
}

TEST(Closure, SoundAndMinimalOnRandomGraphs) {
  std::mt19937_64 rng(11);
  cgtest::DagOptions o;
  o.max_nodes = 12;
  o.groups = 2;
  o.optional_probability = 0.2;
  for (int round = 0; round < 150; ++round) {
    auto g = cgtest::random_dag(rng, o);
    const auto& target = g.nodes[rng() % g.nodes.size()].id;
    auto r = predecessor_closure(g, {target}, ClosurePolicy::minimal());
    ASSERT_TRUE(sound(g, r.nodes));
    // Exhaustive removal under the chosen resolution.
    for (const auto& n : r.nodes) {
      if (r.targets.count(n))
        continue;
      auto fewer = r.nodes;
      fewer.erase(n);
      bool broken = !sound(g, fewer);
      for (const auto& [gid, e] : r.resolved_groups)
        broken = broken || (fewer.count(e.head) && !fewer.count(e.tail));
      EXPECT_TRUE(broken) << "removable node " << n << " in round " << round;
    }
  }
}

TEST(Closure, MonotoneUnderFixedChoices) {
  std::mt19937_64 rng(12);
  cgtest::DagOptions o;
  o.max_nodes = 12;
  o.groups = 2;
  for (int round = 0; round < 100; ++round) {
    auto g = cgtest::random_dag(rng, o);
    for (const auto& choices : cgtest::all_choice_vectors(g)) {
      auto policy = ClosurePolicy::explicit_choices(choices);
      const auto& a = g.nodes[rng() % g.nodes.size()].id;
      const auto& b = g.nodes[rng() % g.nodes.size()].id;
      auto small = predecessor_closure(g, {a}, policy).nodes;
      auto big = predecessor_closure(g, {a, b}, policy).nodes;
      EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
  }
}

TEST(Enumerate, CountsAndOrder) {
  auto chain = cgtest::load_fixture("chain.graph");
  EXPECT_EQ(enumerate_closures(chain, {"c"}, false, 10).closures.size(), 1u);
  auto g = parse(kGroup);
  auto two = enumerate_closures(g, {"c"}, false, 10);
  ASSERT_EQ(two.closures.size(), 2u);
  EXPECT_EQ(two.closures[0].nodes, (Set{"c", "x"}));
  EXPECT_EQ(two.closures[1].nodes, (Set{"c", "w", "y"}));
  EXPECT_FALSE(two.truncated);
  auto cut = enumerate_closures(g, {"c"}, false, 1);
  EXPECT_EQ(cut.closures.size(), 1u);
  EXPECT_TRUE(cut.truncated);
  EXPECT_THROW(enumerate_closures(g, {"c"}, false, 0), Error);
}

TEST(Enumerate, MatchesBruteForceOverChoiceVectors) {
  std::mt19937_64 rng(13);
  cgtest::DagOptions o;
  o.max_nodes = 10;
  o.groups = 3;
  o.edge_probability = 0.4;
  for (int round = 0; round < 80; ++round) {
    auto g = cgtest::random_dag(rng, o);
    const auto& target = g.nodes[rng() % g.nodes.size()].id;
    std::set<Set> expected;
    for (const auto& choices : cgtest::all_choice_vectors(g))
      expected.insert(cgtest::matrix_closure(g, {target}, {false, choices}));
    auto got = enumerate_closures(g, {target}, false, 1000);
    std::set<Set> actual;
    for (const auto& c : got.closures)
      actual.insert(c.nodes);
    EXPECT_EQ(actual.size(), got.closures.size()) << "deduplicated";
    EXPECT_EQ(actual, expected);
    for (std::size_t i = 1; i < got.closures.size(); ++i) {
      const auto& p = got.closures[i - 1].nodes;
      const auto& q = got.closures[i].nodes;
      EXPECT_TRUE(p.size() < q.size() || (p.size() == q.size() && p < q));
    }
  }
}

TEST(Missing, ReportsFirstGap) {
  auto g = cgtest::load_fixture("chain.graph");
  auto m = first_missing_prerequisite(g, {"b", "c"}, {"b", "c"});
  ASSERT_TRUE(m);
  EXPECT_EQ(m->node, "b");
  EXPECT_EQ(m->missing, "a");
  EXPECT_FALSE(first_missing_prerequisite(g, {"b", "c"}, {"a", "b", "c"}));
}
