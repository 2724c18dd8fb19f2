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
#include "core/ingest.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace curriculum;

namespace {

SyntaxError syntax_error(const std::string& text) {
  try {
    parse_native(text);
  } catch (const SyntaxError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed:\n" << text;
  return SyntaxError("NONE", 0, 0, "");
}

bool has_code(const std::vector<Finding>& fs, const std::string& code) {
  return std::any_of(fs.begin(), fs.end(), [&](const Finding& f) { return f.code == code; });
}

GraphMLImport import_fixture(const std::string& name, const ColorMap& colors = ColorMap::defaults(),
                             GraphMLOptions options = {}) {
  return import_graphml(cgtest::slurp(cgtest::fixture("graphml/" + name)), colors, options);
}

} // namespace

TEST(Native, ParsesFields) {
  auto doc = parse_native("# c\ngraph g\nmeta note two words\n"
                          "node a | A \\| pipe \\\\ slash | cl | 15 | ref_a | 2.5\n"
                          "node b | B | - | 20 | -\n"
                          "node c | C | - | 20 | -\n"
                          "group grp c\n"
                          "edge a -> c alt:grp\nedge b -> c required:grp\nedge a -> b optional\n");
  ASSERT_TRUE(doc.report.ok());
  const auto& g = doc.graph;
  EXPECT_EQ(g.discipline, "g");
  EXPECT_EQ(g.metadata.at("note"), "two words");
  const auto* a = g.find_node("a");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->title, "A | pipe \\ slash");
  EXPECT_EQ(a->cluster, "cl");
  EXPECT_EQ(a->duration_minutes, 15);
  EXPECT_EQ(a->content_ref, "ref_a");
  ASSERT_TRUE(a->page_estimate);
  EXPECT_DOUBLE_EQ(*a->page_estimate, 2.5);
  EXPECT_TRUE(g.find_node("b")->content_ref.empty());
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.edges[0].kind, EdgeKind::Alternative);
  EXPECT_EQ(g.edges[1].kind, EdgeKind::Required);
  EXPECT_EQ(g.edges[1].alt_group, "grp");
  EXPECT_EQ(g.edges[2].kind, EdgeKind::Optional);
  EXPECT_EQ(doc.source.node_lines, (std::vector<int>{4, 5, 6}));
  EXPECT_EQ(doc.source.edge_lines, (std::vector<int>{8, 9, 10}));
}

TEST(Native, SyntaxErrorsCarryLocation) {
  auto e = syntax_error("graph g\nnode a | A | - | ten | -\n");
  EXPECT_EQ(e.code(), "BAD_NUMBER");
  EXPECT_EQ(e.line(), 2);
  EXPECT_GT(e.column(), 10);

  e = syntax_error("graph g\nnode a | A | - | 1 | -\nedge a -> a sideways\n");
  EXPECT_EQ(e.code(), "BAD_EDGE_KIND");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 13);

  EXPECT_EQ(syntax_error("node a | A | - | 1 | -\n").code(), "MISSING_HEADER");
  EXPECT_EQ(syntax_error("graph g\ngraph h\n").code(), "DUPLICATE_DECLARATION");
  EXPECT_EQ(syntax_error("graph g\nmeta k 1\nmeta k 2\n").code(), "DUPLICATE_DECLARATION");
  EXPECT_EQ(syntax_error("graph g\nnode a | A\n").code(), "SYNTAX");
  EXPECT_EQ(syntax_error("graph g\nfrobnicate\n").code(), "SYNTAX");
  EXPECT_EQ(syntax_error("graph g\nnode a | A \\q | - | 1 | -\n").code(), "BAD_ESCAPE");
  EXPECT_EQ(syntax_error("graph g\nedge a => b\n").code(), "SYNTAX");
}

TEST(Native, GraphProblemsLandInReportWithLines) {
  auto doc = parse_native("graph g\nnode a | A | - | 1 | -\nnode b | B | - | 1 | -\n"
                          "edge a -> b required\nedge b -> a required\n");
  ASSERT_FALSE(doc.report.ok());
  EXPECT_EQ(doc.report.errors[0].code, "CYCLE");
  doc = parse_native("graph g\nnode a | A | - | 1 | -\nedge a -> zz required\n");
  ASSERT_FALSE(doc.report.ok());
  EXPECT_EQ(doc.report.errors[0].code, "DANGLING_EDGE");
  EXPECT_EQ(doc.report.errors[0].line, 3);
}

TEST(Native, CanonicalWriteIsIdempotent) {
  auto text = cgtest::slurp(cgtest::fixture("latin-32.graph"));
  auto once = write_native(parse_native(text).graph);
  EXPECT_EQ(write_native(parse_native(once).graph), once);
  EXPECT_EQ(once, cgtest::slurp(cgtest::golden("latin-32.canonical.graph")));
}

TEST(Native, RandomDocumentsRoundTrip) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    auto g = cgtest::random_document(rng);
    auto text = write_native(g);
    auto back = parse_native(text);
    ASSERT_TRUE(back.report.ok()) << text;
    EXPECT_TRUE(structurally_equal(g, back.graph)) << text;
    EXPECT_EQ(write_native(back.graph), text);
  }
}

TEST(Native, PaddedTitlesAreInvalid) {
  auto g = cgtest::load_fixture("chain.graph");
  g.nodes[0].title = " A ";
  auto report = validate_graph(g);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.errors[0].code, "INVALID_TITLE");
}

TEST(Native, StructuralEqualityIgnoresOrder) {
  auto a = cgtest::load_fixture("diamond.graph");
  auto b = a;
  std::reverse(b.nodes.begin(), b.nodes.end());
  std::reverse(b.edges.begin(), b.edges.end());
  EXPECT_TRUE(structurally_equal(a, b));
  b.nodes[0].duration_minutes += 1;
  EXPECT_FALSE(structurally_equal(a, b));
}

TEST(ColorMapTest, DefaultsAndParse) {
  auto c = ColorMap::defaults();
  EXPECT_EQ(c.classify("#000000"), EdgeKind::Required);
  EXPECT_EQ(c.classify("#008000"), EdgeKind::Optional);
  EXPECT_EQ(c.classify("#FF0000"), EdgeKind::Alternative);
  EXPECT_FALSE(c.classify("#00A000"));
  auto n = ColorMap::parse("nearest");
  EXPECT_EQ(n.classify("#00A000"), EdgeKind::Optional);
  EXPECT_EQ(n.classify("#E00000"), EdgeKind::Alternative);
  EXPECT_EQ(n.classify("#101010"), EdgeKind::Required);
  auto custom = ColorMap::parse("#0000ff=optional");
  EXPECT_EQ(custom.classify("#0000FF"), EdgeKind::Optional);
  EXPECT_FALSE(custom.classify("#008000"));
  EXPECT_THROW(ColorMap::parse("#00=optional"), Error);
  EXPECT_THROW(ColorMap::parse("#000000=sometimes"), Error);
}

TEST(GraphML, BasicYedFile) {
  auto r = import_fixture("yed-basic.graphml");
  const auto& g = r.graph;
  EXPECT_EQ(g.nodes.size(), 8u);
  EXPECT_EQ(g.edges.size(), 9u);
  EXPECT_TRUE(validate_graph(g).ok());
  EXPECT_EQ(g.find_node("n6::n0")->cluster, "morfologia_verbale");
  EXPECT_EQ(g.find_node("n3")->duration_minutes, 120);
  EXPECT_EQ(g.find_node("n6::n1")->duration_minutes, 30);
  EXPECT_TRUE(has_code(r.warnings, "DEFAULT_DURATION"));
  EXPECT_TRUE(has_code(r.warnings, "SYNTHESIZED_ALT_GROUP"));
  ASSERT_EQ(g.alt_groups.size(), 1u);
  EXPECT_EQ(g.alt_groups.begin()->second.head, "n5");
  auto optional = std::count_if(g.edges.begin(), g.edges.end(),
                                [](const auto& e) { return e.kind == EdgeKind::Optional; });
  EXPECT_EQ(optional, 1);
}

TEST(GraphML, MessyFileWarnsAndDrops) {
  auto r = import_fixture("yed-messy.graphml");
  EXPECT_EQ(r.graph.edges.size(), 3u);
  EXPECT_TRUE(has_code(r.warnings, "UNKNOWN_COLOR"));
  EXPECT_TRUE(has_code(r.warnings, "DANGLING_EDGE"));
  EXPECT_TRUE(has_code(r.warnings, "SELF_LOOP"));
  EXPECT_TRUE(validate_graph(r.graph).ok());

  GraphMLOptions o;
  o.ids_from_labels = true;
  auto near = import_fixture("yed-messy.graphml", ColorMap::parse("nearest"), o);
  EXPECT_TRUE(near.graph.find_node("alfa"));
  EXPECT_TRUE(has_code(near.warnings, "LONE_ALTERNATIVE_EDGE"));
  for (const auto& e : near.graph.edges)
    if (e.tail == "alfa" && e.head == "beta") {
      EXPECT_EQ(e.kind, EdgeKind::Optional);
    }
}

TEST(GraphML, RejectsGarbage) {
  EXPECT_THROW(import_graphml("<graphml><graph>"), SyntaxError);
  EXPECT_THROW(import_graphml("<other/>"), SyntaxError);
  EXPECT_THROW(import_graphml("<graphml/>"), SyntaxError);
}

TEST(GraphML, NativeRoundTripOfImport) {
  auto g = import_fixture("yed-basic.graphml").graph;
  auto back = parse_native(write_native(g));
  EXPECT_TRUE(structurally_equal(g, back.graph));
}

TEST(LoadGraphFile, SniffsFormat) {
  EXPECT_EQ(load_graph_file(cgtest::fixture("graphml/yed-basic.graphml")).nodes.size(), 8u);
  EXPECT_EQ(load_graph_file(cgtest::fixture("latin-32.graph")).nodes.size(), 32u);
  auto dir = cgtest::scratch_dir("ingest");
  std::ofstream(dir / "cyclic.graph") << "graph g\nnode a | A | - | 1 | -\nnode b | B | - | 1 | -\n"
                                         "edge a -> b required\nedge b -> a required\n";
  EXPECT_THROW(load_graph_file(dir / "cyclic.graph"), InvalidGraphError);
  EXPECT_THROW(load_graph_file(dir / "absent.graph"), Error);
}

TEST(Content, ManifestAndTitles) {
  auto store = load_content_store(cgtest::fixture("content/manifest.tsv"));
  EXPECT_EQ(store.size(), 20u);
  auto doc = store.find("u_prop_causale");
  ASSERT_TRUE(doc);
  EXPECT_FALSE(doc->title.empty());
  EXPECT_EQ(doc->body.find("# "), std::string::npos);

  auto dir = cgtest::scratch_dir("content");
  try {
    parse_content_manifest("a\tmissing-one.md\nb\tmissing-two.md\n", dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MISSING_FILE");
    EXPECT_EQ(e.ids().size(), 2u);
  }
  EXPECT_THROW(parse_content_manifest("no tab here\n", dir), Error);
}

TEST(Exercises, ParseWriteRoundTrip) {
  auto text = cgtest::slurp(cgtest::fixture("exercises.ex"));
  auto ex = parse_exercises(text);
  ASSERT_EQ(ex.size(), 5u);
  EXPECT_EQ(ex[3].kind, Exercise::Kind::External);
  EXPECT_EQ(ex[3].nodes, (std::vector<std::string>{"congiuntivo", "imperfetto", "prop_causale"}));
  EXPECT_FALSE(ex[4].difficulty);
  EXPECT_EQ(parse_exercises(write_exercises(ex)), ex);
  auto g = cgtest::load_fixture("latin-32.graph");
  EXPECT_EQ(load_exercises(cgtest::fixture("exercises.ex"), g), ex);
}

TEST(Exercises, SyntaxErrors) {
  auto code = [](const std::string& text) {
    try {
      parse_exercises(text);
    } catch (const SyntaxError& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code("exercise e local a\n"), "MISSING_PROMPT");
  EXPECT_EQ(code("exercise e local a\nprompt p\nprompt q\n"), "DUPLICATE_DECLARATION");
  EXPECT_EQ(code("exercise e local a\nprompt p\ndifficulty 9\n"), "INVALID_DIFFICULTY");
  EXPECT_EQ(code("prompt p\n"), "SYNTAX");
  EXPECT_EQ(code("exercise e sideways a\nprompt p\n"), "SYNTAX");
}
