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

// Test-only helpers: fixture paths, random graph generators and oracles
// that share no code with the engine's algorithms.

#include "core/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace cgtest {

using curriculum::CurriculumGraph;

std::filesystem::path fixture(const std::string& name);
std::filesystem::path golden(const std::string& name);
CurriculumGraph load_fixture(const std::string& name);
std::string slurp(const std::filesystem::path& path);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

struct DagOptions {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 16;
  double edge_probability = 0.3;
  /// Groups of two in-edges, when a head has at least two.
  std::size_t groups = 0;
  double optional_probability = 0.0;
  std::size_t clusters = 0;
};

/// Valid random DAG. Node ids are shuffled relative to the hidden
/// topological order, so id order and dependency order disagree.
CurriculumGraph random_dag(std::mt19937_64& rng, const DagOptions& options);

/// random_dag plus awkward titles, metadata, page estimates and content refs.
CurriculumGraph random_document(std::mt19937_64& rng);

/// Which edges a closure walks: ungrouped required edges, optional edges
/// when asked, and for each group only the member whose tail is chosen.
struct Followed {
  bool include_optional = false;
  std::map<std::string, std::string> choices; // group -> tail
};

/// Targets plus their ancestors over the followed edges, by Warshall
/// transitive closure of the boolean adjacency matrix.
std::set<std::string> matrix_closure(const CurriculumGraph& g, const std::set<std::string>& targets,
                                     const Followed& followed);

/// Every permutation of `nodes` that keeps each edge between two of them
/// pointing forward.
std::set<std::vector<std::string>>
permutation_orders(const CurriculumGraph& g, const std::set<std::string>& nodes);

/// All assignments of one member tail to each group of `g`.
std::vector<std::map<std::string, std::string>> all_choice_vectors(const CurriculumGraph& g);

} // namespace cgtest
