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

#ifndef KGDISTILL_LOSS_H_
#define KGDISTILL_LOSS_H_

#include <span>
#include <vector>

namespace kgdistill {

struct BceResult {
  double loss = 0.0;
  // d(loss)/d(logit) per entry.
  std::vector<double> grad;
};

// weight * mean_i [ -y_i log sigmoid(z_i) - (1 - y_i) log sigmoid(-z_i) ],
// evaluated as max(z, 0) - z y + log1p(exp(-|z|)). Targets may be soft.
// An empty input has loss 0.
BceResult BceLoss(std::span<const double> logits,
                  std::span<const double> targets, double weight);

double Sigmoid(double x);

}  // namespace kgdistill

#endif  // KGDISTILL_LOSS_H_
