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

#ifndef KGDISTILL_SPLIT_H_
#define KGDISTILL_SPLIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "kgdistill/graph.h"

namespace kgdistill {

struct SplitSpec {
  enum class Mode { kEdgeRandom, kNodeHoldout };

  Mode mode = Mode::kEdgeRandom;
  double train_fraction = 0.8;
  double valid_fraction = 0.1;
  double test_fraction = 0.1;
  std::vector<std::string> target_relations;
  uint64_t seed = 0;

  // Throws if fractions are not strictly positive and summing to 1, or if a
  // target relation is missing from `schema`.
  void Validate(const Schema& schema) const;
};

struct SplitResult {
  HeteroGraph train;
  LabeledEdgeSet valid;
  LabeledEdgeSet test;
  std::vector<int32_t> target_relations;
  // Node-holdout mode only: per target relation (same order as
  // `target_relations`), the dst-type nodes whose edges were withheld.
  std::vector<std::vector<int32_t>> held_out_nodes;
};

// Partitions the edges of the target relations. Non-target edges always stay
// in the training graph. Deterministic in `spec.seed`.
SplitResult Split(const HeteroGraph& graph, const SplitSpec& spec);

// Writes one "relation<TAB>src_id<TAB>dst_id" line per test triple.
void WriteSplitManifest(const SplitResult& split, const std::string& path);

const char* SplitModeName(SplitSpec::Mode mode);
SplitSpec::Mode ParseSplitMode(const std::string& name);

}  // namespace kgdistill

#endif  // KGDISTILL_SPLIT_H_
