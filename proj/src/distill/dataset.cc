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

#include "kgdistill/dataset.h"

#include "kgdistill/error.h"
#include "kgdistill/negative_sampling.h"

namespace kgdistill {

EvalSet BuildEvalSet(const HeteroGraph& full, const LabeledEdgeSet& positives,
                     const std::vector<int32_t>& relations, Rng& rng) {
  EvalSet eval;
  eval.relations = relations;
  for (const int32_t r : relations) {
    std::vector<Triple> pos;
    for (const Triple& t : positives.edges()) {
      if (t.relation == r) pos.push_back(t);
    }
    if (pos.empty()) {
      throw Error("no held-out positives for relation '" +
                  full.relation(r).name + "'");
    }
    const auto neg =
        SampleNegatives(full, LabeledEdgeSet::GroundTruth(pos), rng).negatives;
    std::vector<Triple> edges = pos;
    edges.insert(edges.end(), neg.edges().begin(), neg.edges().end());
    std::vector<uint8_t> labels(pos.size(), 1);
    labels.resize(edges.size(), 0);
    eval.edges.push_back(std::move(edges));
    eval.labels.push_back(std::move(labels));
  }
  return eval;
}

double ScoreEvalSet(const LayerStates& hidden, const ModelParams& params,
                    const Schema& schema, const EvalSet& eval,
                    std::vector<double>* per_relation) {
  std::vector<ScoredLabels> sets;
  for (size_t i = 0; i < eval.relations.size(); ++i) {
    sets.push_back({DistMultScore(hidden, params.rel_embed, schema, eval.edges[i]),
                    eval.labels[i]});
  }
  if (per_relation) {
    for (const auto& s : sets) per_relation->push_back(Auprc(s.scores, s.labels));
  }
  return MacroAuprc(sets);
}

Dataset Dataset::Build(std::shared_ptr<const HeteroGraph> full,
                       const SplitSpec& spec) {
  SplitResult split = Split(*full, spec);
  Rng valid_rng = MakeRng(spec.seed, "eval-negatives/valid");
  Rng test_rng = MakeRng(spec.seed, "eval-negatives/test");
  EvalSet valid = BuildEvalSet(*full, split.valid, split.target_relations, valid_rng);
  EvalSet test = BuildEvalSet(*full, split.test, split.target_relations, test_rng);
  return Dataset{std::move(full), std::move(split), std::move(valid),
                 std::move(test)};
}

}  // namespace kgdistill
