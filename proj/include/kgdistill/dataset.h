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

#ifndef KGDISTILL_DATASET_H_
#define KGDISTILL_DATASET_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "kgdistill/encoder.h"
#include "kgdistill/graph.h"
#include "kgdistill/metrics.h"
#include "kgdistill/model.h"
#include "kgdistill/split.h"

namespace kgdistill {

// Candidate triples for evaluation: per target relation, all held-out
// positives plus the same number of sampled negatives.
struct EvalSet {
  std::vector<int32_t> relations;
  std::vector<std::vector<Triple>> edges;
  std::vector<std::vector<uint8_t>> labels;
};

// Negatives are dst corruptions that are not edges of `full`.
EvalSet BuildEvalSet(const HeteroGraph& full, const LabeledEdgeSet& positives,
                     const std::vector<int32_t>& relations, Rng& rng);

// Macro AUPRC of DistMult scores computed from `hidden` (final layer).
// Per-relation values are appended to `per_relation` when non-null.
double ScoreEvalSet(const LayerStates& hidden, const ModelParams& params,
                    const Schema& schema, const EvalSet& eval,
                    std::vector<double>* per_relation = nullptr);

// A split graph plus fixed evaluation candidates. Everything derives from
// the split seed, so teacher and students of one seed see identical data.
struct Dataset {
  std::shared_ptr<const HeteroGraph> full;
  SplitResult split;
  EvalSet valid;
  EvalSet test;

  static Dataset Build(std::shared_ptr<const HeteroGraph> full,
                       const SplitSpec& spec);

  const HeteroGraph& train() const { return split.train; }
  const std::vector<int32_t>& targets() const { return split.target_relations; }
};

}  // namespace kgdistill

#endif  // KGDISTILL_DATASET_H_
