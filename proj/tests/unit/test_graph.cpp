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
#include "core/graph.hpp"
#include "core/ingest.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace curriculum;

namespace {

CurriculumGraph parse(const std::string& body) {
  return parse_native("graph t\n" + body).graph;
}

std::vector<std::string> codes(const std::vector<Finding>& findings) {
  std::vector<std::string> out;
  for (const auto& f : findings)
    out.push_back(f.code);
  return out;
}

bool has(const std::vector<Finding>& findings, const std::string& code) {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding& f) { return f.code == code; });
}

const char* kNodes = "node a | A | - | 10 | -\nnode b | B | - | 10 | -\nnode c | C | - | 10 | -\n";

} // namespace

TEST(Validate, ChainIsClean) {
  auto r = validate_graph(parse(std::string(kNodes) + "edge a -> b\nedge b -> c\n"));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Validate, TwoCycleWitness) {
  auto r = validate_graph(parse(std::string(kNodes) + "edge a -> b\nedge b -> a\nedge b -> c\n"));
  ASSERT_TRUE(has(r.errors, "CYCLE"));
  for (const auto& f : r.errors)
    if (f.code == "CYCLE") {
      EXPECT_EQ(f.ids, (std::vector<std::string>{"a", "b", "a"}));
    }
}

TEST(Validate, OptionalEdgesCountTowardCycles) {
  auto r = validate_graph(parse(std::string(kNodes) + "edge a -> b\nedge b -> a optional\n"));
  EXPECT_TRUE(has(r.errors, "CYCLE"));
}

TEST(Validate, SingletonGroup) {
  auto r = validate_graph(
      parse(std::string(kNodes) + "group g1 c\nedge a -> c alt:g1\nedge a -> b\n"));
  EXPECT_TRUE(has(r.errors, "SINGLETON_ALT_GROUP"));
}

TEST(Validate, StructuralErrors) {
  CurriculumGraph g;
  g.discipline = "t";
  g.nodes = {{"a", "A", "", 10, {}, ""}, {"a", "A2", "", 10, {}, ""}, {"b", "B", "", 10, {}, ""}};
  g.edges = {{"a", "b", EdgeKind::Required, ""},
             {"a", "b", EdgeKind::Required, ""},
             {"b", "b", EdgeKind::Required, ""},
             {"b", "zz", EdgeKind::Required, ""}};
  auto r = validate_graph(g);
  for (const char* code : {"DUPLICATE_NODE_ID", "DUPLICATE_EDGE", "SELF_LOOP", "DANGLING_EDGE"})
    EXPECT_TRUE(has(r.errors, code)) << code;
  auto sorted = r.errors;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Finding& x, const Finding& y) {
    return std::tie(x.code, x.ids) < std::tie(y.code, y.ids);
  });
  EXPECT_EQ(codes(sorted), codes(r.errors)) << "findings sorted by code then ids";
}

TEST(Validate, Warnings) {
  auto r = validate_graph(parse(std::string(kNodes) + "edge a -> b alt\n"));
  EXPECT_TRUE(has(r.warnings, "ISOLATED_NODE"));
  EXPECT_TRUE(has(r.warnings, "UNGROUPED_ALTERNATIVE_EDGE"));
}

TEST(Validate, NodeFieldInvariants) {
  CurriculumGraph g;
  g.discipline = "t";
  g.nodes = {{"Bad Id", "x", "", 10, {}, ""}, {"b", "B", "", 0, {}, ""}};
  auto r = validate_graph(g);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has(r.errors, "INVALID_DURATION"));
}

TEST(Validate, Latin32) {
  auto g = cgtest::load_fixture("latin-32.graph");
  EXPECT_EQ(g.nodes.size(), 32u);
  EXPECT_EQ(g.edges.size(), 33u);
  auto r = validate_graph(g);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(detect_cycle(g));
}

TEST(Cycle, DiamondAndTriangle) {
  EXPECT_FALSE(detect_cycle(cgtest::load_fixture("diamond.graph")));
  auto tri = parse(std::string(kNodes) + "edge a -> b\nedge b -> c\nedge c -> a\n");
  EXPECT_EQ(*detect_cycle(tri), (std::vector<std::string>{"a", "b", "c", "a"}));
}

TEST(Cycle, SmallestParticipatingNode) {
  auto g = parse("node a | A | - | 1 | -\nnode m | M | - | 1 | -\nnode x | X | - | 1 | -\n"
                 "node y | Y | - | 1 | -\nedge a -> x\nedge x -> y\nedge y -> m\nedge m -> x\n");
  EXPECT_EQ(*detect_cycle(g), (std::vector<std::string>{"m", "x", "y", "m"}));
}

TEST(Cycle, DanglingReferenceThrows) {
  CurriculumGraph g;
  g.nodes = {{"a", "A", "", 1, {}, ""}};
  g.edges = {{"a", "zz", EdgeKind::Required, ""}};
  EXPECT_THROW(detect_cycle(g), Error);
}

TEST(Neighbours, Diamond) {
  auto g = cgtest::load_fixture("diamond.graph");
  auto preds = direct_predecessors(g, "d");
  ASSERT_EQ(preds.size(), 2u);
  EXPECT_EQ(preds[0].tail, "b");
  EXPECT_EQ(preds[1].tail, "c");
  EXPECT_TRUE(direct_predecessors(g, "a").empty());
  EXPECT_EQ(direct_successors(g, "a").size(), 2u);
  EXPECT_THROW(direct_predecessors(g, "zz"), Error);
}

TEST(Neighbours, Latin32CausalClause) {
  auto g = cgtest::load_fixture("latin-32.graph");
  auto preds = direct_predecessors(g, "prop_causale");
  ASSERT_EQ(preds.size(), 3u);
  // (kind, tail): required, optional, alternative.
  EXPECT_EQ(preds[0].tail, "prop_temporale");
  EXPECT_EQ(preds[0].alt_group, "g_causale");
  EXPECT_EQ(preds[1].kind, EdgeKind::Optional);
  EXPECT_EQ(preds[1].tail, "compl_mezzo");
  EXPECT_EQ(preds[2].kind, EdgeKind::Alternative);
  EXPECT_EQ(preds[2].tail, "congiuntivo");
}

TEST(Index, TopologicalMatchesEdges) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto g = cgtest::random_dag(rng, {});
    GraphIndex idx(g);
    auto order = idx.topological();
    ASSERT_EQ(order.size(), g.nodes.size());
    std::vector<std::size_t> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
      pos[order[k]] = k;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      EXPECT_LT(pos[idx.tail(e)], pos[idx.head(e)]);
  }
}

TEST(Index, RequireValidThrowsWithReport) {
  auto g = parse(std::string(kNodes) + "edge a -> b\nedge b -> a\n");
  try {
    require_valid(g);
    FAIL();
  } catch (const InvalidGraphError& e) {
    EXPECT_EQ(e.code(), "CYCLE");
    EXPECT_FALSE(e.report().ok());
  }
}
