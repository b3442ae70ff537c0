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

#include "kgdistill/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgdistill/error.h"

namespace kgdistill {

double Auprc(std::span<const double> scores, std::span<const uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw Error("auprc: scores and labels differ in length");
  }
  for (const double s : scores) {
    if (std::isnan(s)) throw Error("auprc: NaN score");
  }
  int64_t total_pos = 0;
  for (const auto y : labels) total_pos += y ? 1 : 0;
  if (total_pos == 0 || total_pos == static_cast<int64_t>(labels.size())) {
    throw Error("auprc needs at least one positive and one negative label");
  }
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] > scores[b];
  });

  double ap = 0.0;
  int64_t seen_pos = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    int64_t group_pos = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      group_pos += labels[order[j]] ? 1 : 0;
      ++j;
    }
    if (group_pos > 0) {
      // Expected precision sum over uniformly random orderings of the group:
      // rank i + k holds a positive with probability p / n, and given that,
      // 1 + (k - 1)(p - 1)/(n - 1) group positives are at or above it.
      const double n = static_cast<double>(j - i);
      const double p = static_cast<double>(group_pos);
      const double share = p / n;
      const double fill = j - i > 1 ? (p - 1.0) / (n - 1.0) : 0.0;
      for (size_t k = 1; k <= j - i; ++k) {
        const double hits = static_cast<double>(seen_pos) + 1.0 +
                            static_cast<double>(k - 1) * fill;
        ap += share * (hits / static_cast<double>(i + k));
      }
    }
    seen_pos += group_pos;
    i = j;
  }
  return ap / static_cast<double>(total_pos);
}

double MacroAuprc(std::span<const ScoredLabels> per_relation) {
  if (per_relation.empty()) throw Error("macro auprc of no relations");
  double sum = 0.0;
  for (const auto& r : per_relation) sum += Auprc(r.scores, r.labels);
  return sum / static_cast<double>(per_relation.size());
}

std::pair<double, double> MeanStd(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1))};
}

GainSummary RelativeGains(std::span<const double> method_auprc,
                          std::span<const int64_t> method_seeds,
                          std::span<const double> baseline_auprc,
                          std::span<const int64_t> baseline_seeds) {
  if (method_auprc.size() != method_seeds.size() ||
      baseline_auprc.size() != baseline_seeds.size()) {
    throw Error("relative gains: values and seeds differ in length");
  }
  if (!std::equal(method_seeds.begin(), method_seeds.end(),
                  baseline_seeds.begin(), baseline_seeds.end())) {
    throw Error("relative gains: method and baseline seed sets differ");
  }
  if (method_seeds.empty()) throw Error("relative gains: no seeds");
  GainSummary out;
  for (size_t i = 0; i < method_auprc.size(); ++i) {
    out.per_seed.push_back(100.0 * (method_auprc[i] - baseline_auprc[i]));
  }
  std::tie(out.mean, out.std) = MeanStd(out.per_seed);
  out.std_defined = out.per_seed.size() > 1;
  return out;
}

}  // namespace kgdistill
