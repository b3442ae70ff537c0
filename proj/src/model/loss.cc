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

#include "kgdistill/loss.h"

#include <cmath>

#include "kgdistill/error.h"

namespace kgdistill {

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

BceResult BceLoss(std::span<const double> logits,
                  std::span<const double> targets, double weight) {
  if (logits.size() != targets.size()) {
    throw Error("bce: logits and targets differ in length");
  }
  if (weight < 0) throw Error("bce: negative weight");
  BceResult out;
  out.grad.assign(logits.size(), 0.0);
  if (logits.empty()) return out;

  const double n = static_cast<double>(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    const double z = logits[i];
    const double y = targets[i];
    sum += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
    out.grad[i] = weight * (Sigmoid(z) - y) / n;
  }
  out.loss = weight * sum / n;
  return out;
}

}  // namespace kgdistill
