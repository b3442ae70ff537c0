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

#ifndef KGDISTILL_RANDOM_GRAPH_H_
#define KGDISTILL_RANDOM_GRAPH_H_

#include <optional>
#include <span>
#include <vector>

#include "kgdistill/graph.h"
#include "kgdistill/rng.h"

namespace kgdistill {

struct RandomGraphSpec {
  // Pseudo edges drawn per relation per generation.
  int k = 1000;
  // Sampling weight is degree^power; 1.5 sharpens the distribution.
  double power = 1.0;
  // 1: fresh graph every epoch; m > 1: every m epochs; 0: one graph for the
  // whole run.
  int regenerate_every = 1;
  // When set, only pseudo labels whose teacher logit exceeds the threshold
  // are kept.
  std::optional<double> strong_score_threshold;
  // Compare |logit| instead of logit against the threshold.
  bool two_sided_threshold = false;
  // Relations to sample over. Empty means "the target relations".
  std::vector<int32_t> relations;

  void Validate() const;
};

// degree^power normalized to sum 1. Throws if every degree is zero.
std::vector<double> SamplingWeights(std::span<const int64_t> degrees,
                                    double power);

// For each relation in `spec.relations`, draws k src nodes and then k dst
// nodes independently and with replacement, each side weighted by its
// endpoint degree^power, and pairs them positionally.
std::vector<Triple> GenerateRandomGraph(const HeteroGraph& graph,
                                        const RandomGraphSpec& spec, Rng& rng);

}  // namespace kgdistill

#endif  // KGDISTILL_RANDOM_GRAPH_H_
