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

#include "kgdistill/pseudo_labels.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgdistill/error.h"
#include "kgdistill/loss.h"

namespace kgdistill {
namespace {

// sigmoid(logit) kept strictly inside (0, 1).
double SoftTarget(double logit) {
  const double p = Sigmoid(logit);
  if (p <= 0.0) return std::numeric_limits<double>::denorm_min();
  if (p >= 1.0) return std::nextafter(1.0, 0.0);
  return p;
}

}  // namespace

FrozenTeacher::FrozenTeacher(const ModelParams& params,
                             const HeteroGraph& train_graph)
    : params_(params), schema_(train_graph.shared_schema()) {
  hidden_ = GraphEncoder(train_graph).Forward(params).hidden;
}

std::vector<double> FrozenTeacher::Logits(std::span<const Triple> edges) const {
  return DistMultScore(embeddings(), params_.rel_embed, *schema_, edges);
}

LabeledEdgeSet TeacherPseudoLabels(const FrozenTeacher& teacher,
                                   std::span<const Triple> edges,
                                   const ScoreFilter& filter) {
  const auto logits = teacher.Logits(edges);
  std::vector<Triple> kept;
  std::vector<double> targets;
  kept.reserve(edges.size());
  targets.reserve(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    if (filter.threshold) {
      const double s = filter.two_sided ? std::abs(logits[i]) : logits[i];
      if (s <= *filter.threshold) continue;
    }
    kept.push_back(edges[i]);
    targets.push_back(SoftTarget(logits[i]));
  }
  return LabeledEdgeSet(LabeledEdgeSet::Kind::kTeacherSoft, std::move(kept),
                        std::move(targets));
}

LabeledEdgeSet TeacherPseudoLabels(const ModelParams& teacher,
                                   const HeteroGraph& train_graph,
                                   std::span<const Triple> edges,
                                   const ScoreFilter& filter) {
  return TeacherPseudoLabels(FrozenTeacher(teacher, train_graph), edges, filter);
}

RandomLabelCache::RandomLabelCache(uint64_t seed)
    : rng_(MakeRng(seed, "random-graph")) {}

const LabeledEdgeSet& EpochRandomLabels(const FrozenTeacher& teacher,
                                        const HeteroGraph& train_graph,
                                        const RandomGraphSpec& spec, int epoch,
                                        RandomLabelCache* cache) {
  if (epoch < 0) throw Error("epoch must be non-negative");
  const bool regenerate =
      !cache->has_labels_ ||
      (spec.regenerate_every > 0 && epoch % spec.regenerate_every == 0);
  if (!regenerate) return cache->labels_;

  cache->labels_ = LabeledEdgeSet();
  const auto edges = GenerateRandomGraph(train_graph, spec, cache->rng_);
  cache->labels_ = TeacherPseudoLabels(
      teacher, edges, {spec.strong_score_threshold, spec.two_sided_threshold});
  cache->has_labels_ = true;
  cache->cumulative_ += static_cast<int64_t>(edges.size());
  ++cache->generations_;
  cache->high_water_ = std::max(cache->high_water_, cache->live());
  return cache->labels_;
}

}  // namespace kgdistill
