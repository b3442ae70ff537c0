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

#ifndef KGDISTILL_PLATEAU_H_
#define KGDISTILL_PLATEAU_H_

#include <span>

#include "kgdistill/model.h"

namespace kgdistill {

struct PlateauOptions {
  int total_epochs = 2000;
  // Reductions can only happen at epochs >= total_epochs - window.
  int window = 400;
  double factor = 0.8;
  int patience = 20;
  // The multiplied learning rate never drops below min_lr.
  double base_lr = 0.0005;
  double min_lr = 1e-6;

  static PlateauOptions FromConfig(const TrainConfig& config);
};

// Reduce-on-plateau for a metric that should increase. The best value is
// tracked over the whole history; epochs inside the window that do not
// strictly improve on it are counted, and every `patience` consecutive such
// epochs multiply the learning rate by `factor`.
class PlateauSchedule {
 public:
  explicit PlateauSchedule(const PlateauOptions& options);

  // Records the metric of `epoch` (epochs must be fed in order) and returns
  // the multiplier to use from the next epoch on.
  double Update(int epoch, double metric);
  double multiplier() const { return multiplier_; }
  int reductions() const { return reductions_; }

 private:
  PlateauOptions options_;
  double best_;
  int bad_epochs_ = 0;
  int reductions_ = 0;
  double multiplier_ = 1.0;
};

// Multiplier after replaying `history[e]` as the metric of epoch e.
double PlateauLr(std::span<const double> history, const PlateauOptions& options);

}  // namespace kgdistill

#endif  // KGDISTILL_PLATEAU_H_
