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

#include "kgdistill/plateau.h"

#include <algorithm>
#include <limits>

namespace kgdistill {

PlateauOptions PlateauOptions::FromConfig(const TrainConfig& config) {
  PlateauOptions o;
  o.total_epochs = config.finetune_epochs;
  o.window = config.plateau_window;
  o.factor = config.plateau_factor;
  o.patience = config.plateau_patience;
  o.base_lr = config.finetune_lr;
  o.min_lr = config.min_lr;
  return o;
}

PlateauSchedule::PlateauSchedule(const PlateauOptions& options)
    : options_(options), best_(-std::numeric_limits<double>::infinity()) {}

double PlateauSchedule::Update(int epoch, double metric) {
  if (metric > best_) {
    best_ = metric;
    bad_epochs_ = 0;
    return multiplier_;
  }
  if (epoch < options_.total_epochs - options_.window) return multiplier_;
  if (++bad_epochs_ >= options_.patience) {
    bad_epochs_ = 0;
    ++reductions_;
    const double floor = options_.base_lr > 0
                             ? options_.min_lr / options_.base_lr
                             : 0.0;
    multiplier_ = std::max(multiplier_ * options_.factor, floor);
  }
  return multiplier_;
}

double PlateauLr(std::span<const double> history,
                 const PlateauOptions& options) {
  PlateauSchedule schedule(options);
  for (size_t e = 0; e < history.size(); ++e) {
    schedule.Update(static_cast<int>(e), history[e]);
  }
  return schedule.multiplier();
}

}  // namespace kgdistill
