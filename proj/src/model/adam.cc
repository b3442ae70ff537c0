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

#include "kgdistill/adam.h"

#include <cmath>

#include "kgdistill/error.h"

namespace kgdistill {

AdamState AdamState::ZerosLike(const TensorBundle& params) {
  AdamState s;
  s.first_moment = params;
  s.first_moment.SetZero();
  s.second_moment = s.first_moment;
  return s;
}

void AdamStepInPlace(ModelParams* params, const Gradients& grads,
                     AdamState* state, double lr, const AdamOptions& options) {
  if (!params->SameShape(grads) || !params->SameShape(state->first_moment) ||
      !params->SameShape(state->second_moment)) {
    throw Error("adam: parameter, gradient and state shapes differ");
  }
  const auto g = grads.Tensors();
  {
    const auto names = grads.TensorNames();
    for (size_t i = 0; i < g.size(); ++i) {
      if (!g[i]->allFinite()) {
        throw Error("adam: non-finite gradient in " + names[i]);
      }
    }
  }
  const auto p = params->Tensors();
  const auto m = state->first_moment.Tensors();
  const auto v = state->second_moment.Tensors();
  ++state->step;
  const double t = static_cast<double>(state->step);
  const double bias1 = 1.0 - std::pow(options.beta1, t);
  const double bias2 = 1.0 - std::pow(options.beta2, t);
  for (size_t i = 0; i < p.size(); ++i) {
    auto ma = m[i]->array();
    auto va = v[i]->array();
    const auto ga = g[i]->array();
    ma = options.beta1 * ma + (1.0 - options.beta1) * ga;
    va = options.beta2 * va + (1.0 - options.beta2) * ga.square();
    p[i]->array() -=
        lr * (ma / bias1) / ((va / bias2).sqrt() + options.epsilon);
  }
}

std::pair<ModelParams, AdamState> AdamStep(const ModelParams& params,
                                           const Gradients& grads,
                                           const AdamState& state, double lr,
                                           const AdamOptions& options) {
  std::pair<ModelParams, AdamState> out{params, state};
  AdamStepInPlace(&out.first, grads, &out.second, lr, options);
  return out;
}

}  // namespace kgdistill
