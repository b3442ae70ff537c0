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

#ifndef KGDISTILL_PSEUDO_LABELS_H_
#define KGDISTILL_PSEUDO_LABELS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kgdistill/encoder.h"
#include "kgdistill/graph.h"
#include "kgdistill/model.h"
#include "kgdistill/random_graph.h"
#include "kgdistill/rng.h"

namespace kgdistill {

// A trained teacher together with its final node embeddings on the training
// graph. Embeddings are computed once, from the training graph only, and the
// parameters are never modified.
class FrozenTeacher {
 public:
  FrozenTeacher(const ModelParams& params, const HeteroGraph& train_graph);

  const ModelParams& params() const { return params_; }
  const Schema& schema() const { return *schema_; }
  // Hidden states of every layer (index 0 = input embeddings).
  const std::vector<LayerStates>& hidden() const { return hidden_; }
  const LayerStates& embeddings() const { return hidden_.back(); }

  std::vector<double> Logits(std::span<const Triple> edges) const;

 private:
  const ModelParams& params_;
  std::shared_ptr<const Schema> schema_;
  std::vector<LayerStates> hidden_;
};

struct ScoreFilter {
  std::optional<double> threshold;
  bool two_sided = false;
};

// Teacher soft targets sigmoid(logit) for `edges`. With a threshold, entries
// with logit <= threshold (|logit| <= threshold when two-sided) are dropped.
LabeledEdgeSet TeacherPseudoLabels(const FrozenTeacher& teacher,
                                   std::span<const Triple> edges,
                                   const ScoreFilter& filter = {});

// Convenience overload that encodes `train_graph` with the teacher first.
LabeledEdgeSet TeacherPseudoLabels(const ModelParams& teacher,
                                   const HeteroGraph& train_graph,
                                   std::span<const Triple> edges,
                                   const ScoreFilter& filter = {});

// Holds the current random-graph pseudo labels of one training run and the
// counters used to audit memory use.
class RandomLabelCache {
 public:
  explicit RandomLabelCache(uint64_t seed);

  const LabeledEdgeSet& labels() const { return labels_; }
  int64_t live() const { return static_cast<int64_t>(labels_.size()); }
  int64_t high_water() const { return high_water_; }
  // Total labeled random edges over all generations.
  int64_t cumulative() const { return cumulative_; }
  int64_t generations() const { return generations_; }

 private:
  friend const LabeledEdgeSet& EpochRandomLabels(const FrozenTeacher&,
                                                 const HeteroGraph&,
                                                 const RandomGraphSpec&, int,
                                                 RandomLabelCache*);
  Rng rng_;
  bool has_labels_ = false;
  LabeledEdgeSet labels_;
  int64_t high_water_ = 0;
  int64_t cumulative_ = 0;
  int64_t generations_ = 0;
};

// Random-graph pseudo labels for `epoch`. A new graph is drawn and labeled
// when the regeneration policy says so; otherwise the cached set is returned.
// The previous set is released before a new one is built, so at most one
// generation is alive.
const LabeledEdgeSet& EpochRandomLabels(const FrozenTeacher& teacher,
                                        const HeteroGraph& train_graph,
                                        const RandomGraphSpec& spec, int epoch,
                                        RandomLabelCache* cache);

}  // namespace kgdistill

#endif  // KGDISTILL_PSEUDO_LABELS_H_
