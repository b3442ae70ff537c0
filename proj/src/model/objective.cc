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

#include "kgdistill/objective.h"

#include "kgdistill/error.h"
#include "kgdistill/loss.h"

namespace kgdistill {
namespace {

ObjectiveResult Run(const ModelParams& params, const GraphEncoder& encoder,
                    std::span<const LossTerm> terms,
                    std::span<const HiddenLossTerm> hidden_terms,
                    bool with_gradients) {
  const Schema& schema = encoder.schema();
  const ForwardCache cache = encoder.Forward(params);
  const LayerStates& out = cache.output();

  ObjectiveResult result;
  std::vector<LayerStates> hidden_grads(cache.hidden.size());
  if (with_gradients) {
    result.grads = Gradients::ZerosLike(params);
    for (size_t t = 0; t < out.size(); ++t) {
      hidden_grads.back().push_back(Matrix::Zero(out[t].rows(), out[t].cols()));
    }
  }

  for (const LossTerm& term : terms) {
    if (term.weight < 0) throw Error("negative loss weight");
    const auto logits = DistMultScore(out, params.rel_embed, schema, term.edges);
    BceResult bce = BceLoss(logits, term.targets, 1.0);
    result.term_losses.push_back(bce.loss);
    result.total += term.weight * bce.loss;
    if (with_gradients && term.weight != 0.0) {
      for (auto& g : bce.grad) g *= term.weight;
      DistMultBackward(out, params.rel_embed, schema, term.edges, bce.grad,
                       &hidden_grads.back(), &result.grads.rel_embed);
    }
  }
  for (const HiddenLossTerm& term : hidden_terms) {
    if (term.weight < 0) throw Error("negative loss weight");
    const double loss =
        term.fn(cache, term.weight, with_gradients ? &hidden_grads : nullptr);
    result.term_losses.push_back(loss);
    result.total += term.weight * loss;
  }
  if (with_gradients) {
    encoder.Backward(params, cache, std::move(hidden_grads), &result.grads);
  }
  return result;
}

}  // namespace

ObjectiveResult ComputeObjective(const ModelParams& params,
                                 const GraphEncoder& encoder,
                                 std::span<const LossTerm> terms,
                                 std::span<const HiddenLossTerm> hidden_terms) {
  return Run(params, encoder, terms, hidden_terms, /*with_gradients=*/true);
}

double EvaluateObjective(const ModelParams& params, const GraphEncoder& encoder,
                         std::span<const LossTerm> terms,
                         std::span<const HiddenLossTerm> hidden_terms) {
  return Run(params, encoder, terms, hidden_terms, /*with_gradients=*/false)
      .total;
}

}  // namespace kgdistill
