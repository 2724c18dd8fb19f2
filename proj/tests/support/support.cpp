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
#include "support.hpp"

#include "core/ingest.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#ifndef CGRAPH_TEST_DATA
#error "CGRAPH_TEST_DATA must point at tests/"
#endif

namespace cgtest {

namespace fs = std::filesystem;
using namespace curriculum;

fs::path fixture(const std::string& name) { return fs::path(CGRAPH_TEST_DATA) / "fixtures" / name; }
fs::path golden(const std::string& name) { return fs::path(CGRAPH_TEST_DATA) / "golden" / name; }

CurriculumGraph load_fixture(const std::string& name) { return load_graph_file(fixture(name)); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = fs::temp_directory_path() /
             ("cgraph-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CurriculumGraph random_dag(std::mt19937_64& rng, const DagOptions& o) {
  std::uniform_int_distribution<std::size_t> size(o.min_nodes, o.max_nodes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const auto n = size(rng);

  // rank[i] is the hidden topological position of node "nXX".
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<std::string> by_rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "n%02zu", i);
    by_rank[rank[i]] = buf;
  }

  CurriculumGraph g;
  g.discipline = "random";
  for (std::size_t i = 0; i < n; ++i) {
    TopicNode node;
    char buf[24];
    std::snprintf(buf, sizeof buf, "n%02zu", i);
    node.id = buf;
    node.title = "Node " + std::to_string(i);
    node.duration_minutes = 10 + static_cast<int>(rng() % 80);
    if (o.clusters)
      node.cluster = "c" + std::to_string(rng() % o.clusters);
    g.nodes.push_back(node);
  }
  std::map<std::string, std::vector<std::size_t>> into;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng) < o.edge_probability) {
        into[by_rank[b]].push_back(g.edges.size());
        g.edges.push_back({by_rank[a], by_rank[b], EdgeKind::Required, {}});
      }

  std::vector<std::string> heads;
  for (const auto& [h, es] : into)
    if (es.size() >= 2)
      heads.push_back(h);
  std::shuffle(heads.begin(), heads.end(), rng);
  for (std::size_t k = 0; k < o.groups && k < heads.size(); ++k) {
    auto es = into[heads[k]];
    std::shuffle(es.begin(), es.end(), rng);
    auto gid = "g_" + heads[k];
    g.alt_groups.emplace(gid, AltGroup{gid, heads[k]});
    g.edges[es[0]].alt_group = gid;
    g.edges[es[1]].alt_group = gid;
    g.edges[es[1]].kind = EdgeKind::Alternative;
    // A third member now and then.
    if (es.size() > 2 && coin(rng) < 0.3) {
      g.edges[es[2]].alt_group = gid;
      g.edges[es[2]].kind = EdgeKind::Alternative;
    }
  }
  for (auto& e : g.edges)
    if (!e.grouped() && coin(rng) < o.optional_probability)
      e.kind = EdgeKind::Optional;
  std::shuffle(g.edges.begin(), g.edges.end(), rng);
  return g;
}

CurriculumGraph random_document(std::mt19937_64& rng) {
  DagOptions o;
  o.max_nodes = 14;
  o.groups = 2;
  o.optional_probability = 0.2;
  o.clusters = 3;
  auto g = random_dag(rng, o);
  static const char* titles[] = {"Prima | seconda", "Back\\slash", "Accentate: è, à, ù",
                                 "inner  double  blanks", "tab\there", "pipe||double", "#hash first"};
  for (auto& node : g.nodes) {
    auto pick = rng() % 10;
    if (pick < 7)
      node.title = titles[pick];
    if (rng() % 3 == 0)
      node.page_estimate = static_cast<double>(rng() % 40 + 1) / 4.0;
    if (rng() % 3 == 0)
      node.content_ref = "u_" + node.id;
  }
  g.metadata["source"] = "random book " + std::to_string(rng() % 100);
  g.metadata["empty"] = "";
  return g;
}

std::set<std::string> matrix_closure(const CurriculumGraph& g, const std::set<std::string>& targets,
                                     const Followed& followed) {
  std::vector<std::string> ids;
  for (const auto& node : g.nodes)
    ids.push_back(node.id);
  std::sort(ids.begin(), ids.end());
  auto index = [&](const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  const auto n = ids.size();

  // reach[h][t]: t is an ancestor of h over followed edges.
  std::vector<boost::dynamic_bitset<>> reach(n, boost::dynamic_bitset<>(n));
  for (const auto& e : g.edges) {
    bool follow = false;
    if (e.grouped()) {
      auto c = followed.choices.find(e.alt_group);
      follow = c != followed.choices.end() && c->second == e.tail;
    } else if (e.kind == EdgeKind::Required) {
      follow = true;
    } else if (e.kind == EdgeKind::Optional) {
      follow = followed.include_optional;
    }
    if (follow)
      reach[index(e.head)].set(index(e.tail));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i].test(k))
        reach[i] |= reach[k];

  std::set<std::string> out(targets.begin(), targets.end());
  for (const auto& t : targets) {
    const auto& row = reach[index(t)];
    for (auto j = row.find_first(); j != boost::dynamic_bitset<>::npos; j = row.find_next(j))
      out.insert(ids[j]);
  }
  return out;
}

std::set<std::vector<std::string>>
permutation_orders(const CurriculumGraph& g, const std::set<std::string>& nodes) {
  std::vector<std::string> perm(nodes.begin(), nodes.end());
  std::set<std::vector<std::string>> out;
  do {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < perm.size(); ++i)
      pos[perm[i]] = i;
    bool ok = true;
    for (const auto& e : g.edges)
      if (nodes.count(e.tail) && nodes.count(e.head) && pos[e.tail] > pos[e.head]) {
        ok = false;
        break;
      }
    if (ok)
      out.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::map<std::string, std::string>> all_choice_vectors(const CurriculumGraph& g) {
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (const auto& [gid, group] : g.alt_groups) {
    std::vector<std::string> tails;
    for (const auto& e : g.edges)
      if (e.alt_group == gid)
        tails.push_back(e.tail);
    std::sort(tails.begin(), tails.end());
    groups.emplace_back(gid, tails);
  }
  std::vector<std::map<std::string, std::string>> out{{}};
  for (const auto& [gid, tails] : groups) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& partial : out)
      for (const auto& t : tails) {
        auto v = partial;
        v[gid] = t;
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

} // namespace cgtest
