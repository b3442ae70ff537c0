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

#ifndef KGDISTILL_OBJECTIVE_H_
#define KGDISTILL_OBJECTIVE_H_

#include <functional>
#include <span>
#include <vector>

#include "kgdistill/encoder.h"
#include "kgdistill/graph.h"
#include "kgdistill/model.h"

namespace kgdistill {

// One binary cross-entropy term: a list of scored triples with (soft) targets
// and a non-negative weight multiplying the term's mean loss.
struct LossTerm {
  std::span<const Triple> edges;
  std::span<const double> targets;
  double weight = 1.0;
};

// A loss defined directly on hidden states (e.g. a structure-preserving
// distillation loss). `fn` returns the unweighted loss and accumulates
// weight * d(loss)/d(hidden[l]) into `hidden_grads`.
struct HiddenLossTerm {
  double weight = 0.0;
  std::function<double(const ForwardCache& cache, double weight,
                       std::vector<LayerStates>* hidden_grads)>
      fn;
};

struct ObjectiveResult {
  // sum_i weight_i * term_losses[i], in term order, hidden terms last.
  double total = 0.0;
  // Unweighted mean loss of every term.
  std::vector<double> term_losses;
  Gradients grads;
};

// Forward pass, weighted binary cross-entropy over `terms` on DistMult
// scores of the final hidden states, then exact reverse-mode gradients with
// respect to every parameter tensor. Zero-weight terms are evaluated but
// contribute nothing to the gradient.
ObjectiveResult ComputeObjective(const ModelParams& params,
                                 const GraphEncoder& encoder,
                                 std::span<const LossTerm> terms,
                                 std::span<const HiddenLossTerm> hidden_terms =
                                     {});

// Same objective value without gradients.
double EvaluateObjective(const ModelParams& params, const GraphEncoder& encoder,
                         std::span<const LossTerm> terms,
                         std::span<const HiddenLossTerm> hidden_terms = {});

}  // namespace kgdistill

#endif  // KGDISTILL_OBJECTIVE_H_
