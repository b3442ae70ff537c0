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

#ifndef KGDISTILL_SYNTHETIC_H_
#define KGDISTILL_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "kgdistill/graph.h"

namespace kgdistill {

struct SyntheticSpec {
  int n_types = 3;
  int n_relations = 4;
  int nodes_per_type = 500;
  int latent_dim = 8;
  // Expected fraction of (src, dst) pairs of a relation that become edges.
  double density = 0.02;
  uint64_t seed = 0;
  // Multiplies the latent trilinear score before the sigmoid. Larger values
  // make edges more predictable from the latent factors.
  double sharpness = 2.0;
  // Log-standard-deviation of the per-node latent norm.
  double norm_log_sigma = 0.6;

  void Validate() const;
};

// Latent factors that generated a synthetic graph.
struct LatentFactors {
  // node[t][i] has latent_dim entries.
  std::vector<std::vector<std::vector<double>>> node;
  // relation[r] has latent_dim entries.
  std::vector<std::vector<double>> relation;
};

struct SyntheticKg {
  HeteroGraph graph;
  LatentFactors latent;
  // Per relation: sum of the realized edge probabilities and the binomial
  // variance sum p(1-p) of the edge count.
  std::vector<double> expected_edges;
  std::vector<double> edge_count_variance;
};

// Draws a latent vector per node and per relation and forms each candidate
// edge (r, u, v) independently with probability
//   sigmoid(sharpness / sqrt(latent_dim) * <z_u, z_r, z_v> + b)
// where b is solved per relation so the expected edge count equals
// density * |src type| * |dst type|. Node latent norms are log-normal, which
// makes degrees heavy-tailed.
SyntheticKg GenerateSyntheticKg(const SyntheticSpec& spec);

// Endpoint types used for relation `r` among `n_types` node types.
RelationInfo SyntheticRelation(int r, int n_types);

}  // namespace kgdistill

#endif  // KGDISTILL_SYNTHETIC_H_
