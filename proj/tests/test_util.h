/*
 * Copyright 2026 The kgdistill Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KGDISTILL_TESTS_TEST_UTIL_H_
#define KGDISTILL_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "kgdistill/dataset.h"
#include "kgdistill/graph.h"
#include "kgdistill/synthetic.h"

namespace kgdistill::testing {

// Random graph with `n_types` types of `nodes` nodes each and `n_rel`
// relations with `edges_per_rel` uniformly drawn edges.
inline HeteroGraph RandomGraph(int n_types, int nodes, int n_rel,
                               int edges_per_rel, uint64_t seed) {
  std::vector<NodeType> types;
  for (int t = 0; t < n_types; ++t) types.push_back({"t" + std::to_string(t), nodes});
  std::vector<RelationInfo> rels;
  for (int r = 0; r < n_rel; ++r) {
    rels.push_back({"r" + std::to_string(r), r % n_types, (r + 1) % n_types});
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  std::vector<std::vector<Edge>> edges(n_rel);
  for (auto& list : edges) {
    for (int i = 0; i < edges_per_rel; ++i) list.push_back({pick(rng), pick(rng)});
  }
  return HeteroGraph(MakeIndexedSchema(std::move(types), std::move(rels)),
                     std::move(edges));
}

// Small synthetic dataset with every relation as a target.
inline Dataset SmallDataset(uint64_t seed, int nodes_per_type = 60,
                            double density = 0.08) {
  SyntheticSpec s;
  s.n_types = 2;
  s.n_relations = 2;
  s.nodes_per_type = nodes_per_type;
  s.latent_dim = 4;
  s.density = density;
  s.seed = seed;
  auto graph = std::make_shared<const HeteroGraph>(GenerateSyntheticKg(s).graph);
  SplitSpec split;
  split.seed = seed;
  for (const auto& r : graph->schema().relations) {
    split.target_relations.push_back(r.name);
  }
  return Dataset::Build(graph, split);
}

// Fresh empty directory under the system temp directory.
inline std::string TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("kgdistill_test_" + name + "_" +
                    std::to_string(::testing::UnitTest::GetInstance()
                                       ->random_seed()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace kgdistill::testing

#endif  // KGDISTILL_TESTS_TEST_UTIL_H_
