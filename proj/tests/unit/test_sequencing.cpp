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
#include "core/sequencing.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curriculum;
using Order = std::vector<std::string>;

namespace {

ClosureResult closure_of(const CurriculumGraph& g, std::set<std::string> targets) {
  return predecessor_closure(g, targets, ClosurePolicy::minimal());
}

CurriculumGraph parse(const std::string& body) {
  return parse_native("graph t\n" + body).graph;
}

const char* kAntichain = "node a | A | - | 1 | -\nnode b | B | - | 1 | -\nnode c | C | - | 1 | -\n"
                         "node d | D | - | 1 | -\n";

} // namespace

TEST(Topological, WorkedExamples) {
  auto diamond = cgtest::load_fixture("diamond.graph");
  EXPECT_EQ(topological_order(closure_of(diamond, {"d"})).nodes, (Order{"a", "b", "c", "d"}));
  auto chain = cgtest::load_fixture("chain.graph");
  EXPECT_EQ(topological_order(closure_of(chain, {"c"})).nodes, (Order{"a", "b", "c"}));
}

TEST(Topological, SmallestReadyIdFirst) {
  auto g = parse("node a | A | - | 1 | -\nnode b | B | - | 1 | -\nnode z | Z | - | 1 | -\n"
                 "edge z -> a\n");
  EXPECT_EQ(topological_order(closure_of(g, {"a", "b"})).nodes, (Order{"b", "z", "a"}));
}

TEST(ValidOrder, WorkedExamples) {
  auto c = closure_of(cgtest::load_fixture("diamond.graph"), {"d"});
  EXPECT_TRUE(is_valid_order(c, Order{"a", "c", "b", "d"}).valid);
  auto bad = is_valid_order(c, Order{"b", "a", "c", "d"});
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.defect, OrderDefect::EdgeViolation);
  EXPECT_EQ(bad.violated->tail, "a");
  EXPECT_EQ(bad.violated->head, "b");
  auto missing = is_valid_order(c, Order{"a", "b", "c"});
  EXPECT_EQ(missing.defect, OrderDefect::NotPermutation);
  EXPECT_EQ(is_valid_order(c, Order{"a", "b", "c", "d", "d"}).defect, OrderDefect::NotPermutation);
  EXPECT_EQ(is_valid_order(c, Order{"a", "b", "c", "x"}).defect, OrderDefect::NotPermutation);
}

TEST(Enumeration, WorkedExamples) {
  auto chain = closure_of(cgtest::load_fixture("chain.graph"), {"c"});
  EXPECT_EQ(all_linearizations(chain).orders.size(), 1u);
  auto three = closure_of(parse("node a | A | - | 1 | -\nnode b | B | - | 1 | -\n"
                                "node c | C | - | 1 | -\n"),
                          {"a", "b", "c"});
  EXPECT_EQ(all_linearizations(three).orders.size(), 6u);
  auto diamond = all_linearizations(closure_of(cgtest::load_fixture("diamond.graph"), {"d"}));
  ASSERT_EQ(diamond.orders.size(), 2u);
  EXPECT_EQ(diamond.orders[0].nodes, (Order{"a", "b", "c", "d"}));
  EXPECT_EQ(diamond.orders[1].nodes, (Order{"a", "c", "b", "d"}));
}

TEST(Enumeration, CapAndTruncation) {
  auto c = closure_of(parse(kAntichain), {"a", "b", "c", "d"});
  auto cut = all_linearizations(c, 5);
  EXPECT_EQ(cut.orders.size(), 5u);
  EXPECT_TRUE(cut.truncated);
  auto full = all_linearizations(c, 24);
  EXPECT_EQ(full.orders.size(), 24u);
  EXPECT_FALSE(full.truncated);
  EXPECT_THROW(all_linearizations(c, 0), Error);
}

TEST(Count, WorkedExamples) {
  auto anti = count_linearizations(closure_of(parse(kAntichain), {"a", "b", "c", "d"}));
  EXPECT_EQ(anti.count, 24u);
  EXPECT_TRUE(anti.exact);
  auto diamond = count_linearizations(closure_of(cgtest::load_fixture("diamond.graph"), {"d"}));
  EXPECT_EQ(diamond.count, 2u);
  EXPECT_TRUE(diamond.exact);
  auto capped = count_linearizations(closure_of(parse(kAntichain), {"a", "b", "c", "d"}), 10);
  EXPECT_EQ(capped.count, 10u);
  EXPECT_FALSE(capped.exact);
  EXPECT_EQ(count_linearizations(closure_of(parse(kAntichain), {"a", "b", "c", "d"}), 24).count,
            24u);
}

TEST(Count, NineNodeSuiteAgainstPermutations) {
  std::mt19937_64 rng(21);
  cgtest::DagOptions o;
  o.min_nodes = 9;
  o.max_nodes = 9;
  o.edge_probability = 0.25;
  for (int round = 0; round < 5; ++round) {
    auto g = cgtest::random_dag(rng, o);
    std::set<std::string> all;
    for (const auto& n : g.nodes)
      all.insert(n.id);
    auto c = closure_of(g, all);
    auto oracle = cgtest::permutation_orders(g, all);
    auto n = count_linearizations(c, 10'000'000);
    EXPECT_TRUE(n.exact);
    EXPECT_EQ(n.count, oracle.size());
  }
}

TEST(Properties, TopologicalIsSmallestValidOrder) {
  std::mt19937_64 rng(22);
  cgtest::DagOptions o;
  o.max_nodes = 8;
  o.groups = 1;
  o.optional_probability = 0.2;
  for (int round = 0; round < 100; ++round) {
    auto g = cgtest::random_dag(rng, o);
    auto c = closure_of(g, {g.nodes[rng() % g.nodes.size()].id});
    auto all = all_linearizations(c, 100000);
    auto topo = topological_order(c);
    EXPECT_TRUE(is_valid_order(c, topo.nodes).valid);
    ASSERT_FALSE(all.orders.empty());
    EXPECT_EQ(all.orders.front(), topo);
    EXPECT_TRUE(std::is_sorted(all.orders.begin(), all.orders.end()));
    for (const auto& lin : all.orders)
      EXPECT_TRUE(is_valid_order(c, lin.nodes).valid);
  }
}

TEST(Popularity, RecordAndSerialize) {
  PopularityStore s;
  s = record_adoption(s, {{"a", "b", "c"}});
  EXPECT_EQ(s.pair_count("a", "b"), 1u);
  EXPECT_EQ(s.pair_count("b", "c"), 1u);
  EXPECT_EQ(s.book_count(), 1u);
  s = record_adoption(s, {{"a", "b", "c"}});
  EXPECT_EQ(s.pair_count("a", "b"), 2u);
  s = record_adoption(s, {{"a", "c", "b"}});
  EXPECT_EQ(s.pair_count("a", "c"), 1u);
  EXPECT_EQ(s.pair_count("c", "b"), 1u);
  EXPECT_EQ(s.book_count(), 3u);
  EXPECT_EQ(PopularityStore::parse(s.serialize()), s);
  EXPECT_NE(s.serialize().find("books 3\n"), std::string::npos);
  EXPECT_THROW(PopularityStore::parse("pair a b x\n"), Error);

  auto dir = cgtest::scratch_dir("pop");
  EXPECT_EQ(PopularityStore::load(dir / "none.txt").book_count(), 0u);
  s.save(dir / "p.txt");
  EXPECT_EQ(PopularityStore::load(dir / "p.txt"), s);
}

TEST(Scoring, Components) {
  auto g = parse("node a | A | k | 10 | -\nnode b | B | k | 20 | -\nnode c | C | j | 30 | -\n"
                 "node d | D | k | 40 | -\n");
  RankingWeights w;
  PopularityStore empty;
  auto single = score_ordering({{"a"}}, g, w, empty);
  EXPECT_DOUBLE_EQ(single.time, 1.0 / 11.0);
  EXPECT_EQ(single.popularity, 0.0);
  EXPECT_EQ(single.coherence, 0.0);
  // Cluster k contiguous versus interleaved.
  auto contiguous = score_ordering({{"a", "b", "d", "c"}}, g, w, empty);
  auto interleaved = score_ordering({{"a", "c", "b", "d"}}, g, w, empty);
  EXPECT_DOUBLE_EQ(contiguous.coherence, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(interleaved.coherence, 1.0 / 3.0);
  auto pop = record_adoption({}, {{"a", "b", "d", "c"}});
  auto p = score_ordering({{"a", "b", "d", "c"}}, g, w, pop);
  EXPECT_DOUBLE_EQ(p.popularity, 3.0 / 2.0);
  EXPECT_DOUBLE_EQ(p.total, p.time + p.popularity + p.coherence);
}

TEST(Ranking, WorkedExamples) {
  auto g = cgtest::load_fixture("diamond.graph");
  auto c = closure_of(g, {"d"});
  RankingWeights w;
  EXPECT_TRUE(rank_orderings({}, g, w, {}).empty());
  auto one = rank_orderings({{{"a", "b", "c", "d"}}}, g, w, {});
  ASSERT_EQ(one.size(), 1u);
  auto tie = rank_orderings(all_linearizations(c).orders, g, w, {});
  EXPECT_EQ(tie[0].order.nodes, (Order{"a", "b", "c", "d"}));
  auto pop = record_adoption({}, {{"a", "c", "b", "d"}});
  auto ranked = rank_orderings(all_linearizations(c).orders, g, w, pop);
  EXPECT_EQ(ranked[0].order.nodes, (Order{"a", "c", "b", "d"}));
  EXPECT_GT(ranked[0].score.popularity, ranked[1].score.popularity);
}

TEST(Ranking, PermutationNonIncreasingAndScaleInvariant) {
  std::mt19937_64 rng(23);
  cgtest::DagOptions o;
  o.max_nodes = 7;
  o.clusters = 2;
  for (int round = 0; round < 40; ++round) {
    auto g = cgtest::random_dag(rng, o);
    std::set<std::string> all;
    for (const auto& n : g.nodes)
      all.insert(n.id);
    auto lins = all_linearizations(closure_of(g, all), 500).orders;
    PopularityStore pop;
    for (int k = 0; k < 3 && !lins.empty(); ++k)
      pop = record_adoption(pop, lins[rng() % lins.size()]);
    RankingWeights w{0.5, 2.0, 1.5};
    auto ranked = rank_orderings(lins, g, w, pop);
    ASSERT_EQ(ranked.size(), lins.size());
    std::set<Linearization> in(lins.begin(), lins.end()), out;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      out.insert(ranked[i].order);
      if (i) {
        EXPECT_GE(ranked[i - 1].score.total + 1e-12, ranked[i].score.total);
      }
    }
    EXPECT_EQ(in, out);
    auto scaled = rank_orderings(lins, g, {3.5, 14.0, 10.5}, pop);
    for (std::size_t i = 0; i < ranked.size(); ++i)
      EXPECT_EQ(scaled[i].order, ranked[i].order);
  }
}

TEST(Ranking, WeightChecks) {
  EXPECT_THROW((RankingWeights{0, 0, 0}.check()), Error);
  EXPECT_THROW((RankingWeights{-1, 1, 1}.check()), Error);
  EXPECT_THROW((RankingWeights{NAN, 1, 1}.check()), Error);
  EXPECT_NO_THROW((RankingWeights{0, 0, 1}.check()));
}
