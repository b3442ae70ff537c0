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

#ifndef KGDISTILL_METRICS_H_
#define KGDISTILL_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace kgdistill {

// Average precision (area under the precision-recall curve without
// interpolation). Items are ranked by decreasing score. Within a group of
// tied scores the result is the average over every ordering of the group,
// computed in closed form. Throws unless both labels occur.
double Auprc(std::span<const double> scores, std::span<const uint8_t> labels);

struct ScoredLabels {
  std::vector<double> scores;
  std::vector<uint8_t> labels;
};

// Unweighted mean of per-relation average precision.
double MacroAuprc(std::span<const ScoredLabels> per_relation);

struct GainSummary {
  double mean = 0.0;
  // Sample standard deviation (n - 1); 0 when only one seed is available.
  double std = 0.0;
  // False when std is undefined (a single seed).
  bool std_defined = true;
  std::vector<double> per_seed;
};

// gain_s = 100 * (method_s - baseline_s) over seeds paired by position.
// `method_seeds` and `baseline_seeds` must be identical.
GainSummary RelativeGains(std::span<const double> method_auprc,
                          std::span<const int64_t> method_seeds,
                          std::span<const double> baseline_auprc,
                          std::span<const int64_t> baseline_seeds);

// Mean and sample standard deviation; std is 0 for fewer than two values.
std::pair<double, double> MeanStd(std::span<const double> values);

}  // namespace kgdistill

#endif  // KGDISTILL_METRICS_H_
