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

#ifndef KGDISTILL_ADAM_H_
#define KGDISTILL_ADAM_H_

#include <cstdint>
#include <utility>

#include "kgdistill/model.h"

namespace kgdistill {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  TensorBundle first_moment;
  TensorBundle second_moment;
  int64_t step = 0;

  static AdamState ZerosLike(const TensorBundle& params);
};

// Bias-corrected Adam update. Throws kgdistill::Error naming the tensor when
// a gradient entry is not finite; parameters are untouched in that case.
void AdamStepInPlace(ModelParams* params, const Gradients& grads,
                     AdamState* state, double lr,
                     const AdamOptions& options = {});

// Pure variant of AdamStepInPlace.
std::pair<ModelParams, AdamState> AdamStep(const ModelParams& params,
                                           const Gradients& grads,
                                           const AdamState& state, double lr,
                                           const AdamOptions& options = {});

}  // namespace kgdistill

#endif  // KGDISTILL_ADAM_H_
