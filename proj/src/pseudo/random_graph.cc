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

#include "kgdistill/random_graph.h"

#include <cmath>
#include <random>

#include "kgdistill/error.h"

namespace kgdistill {

void RandomGraphSpec::Validate() const {
  if (k < 1) throw Error("random graph: k must be >= 1");
  if (!(power > 0)) throw Error("random graph: power must be positive");
  if (regenerate_every < 0) {
    throw Error("random graph: regenerate_every must be >= 0");
  }
}

std::vector<double> SamplingWeights(std::span<const int64_t> degrees,
                                    double power) {
  std::vector<double> w(degrees.size());
  double total = 0.0;
  for (size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) throw Error("negative degree");
    w[i] = degrees[i] == 0 ? 0.0 : std::pow(static_cast<double>(degrees[i]), power);
    total += w[i];
  }
  if (total <= 0) throw Error("all degrees are zero");
  for (auto& x : w) x /= total;
  return w;
}

std::vector<Triple> GenerateRandomGraph(const HeteroGraph& graph,
                                        const RandomGraphSpec& spec, Rng& rng) {
  spec.Validate();
  std::vector<Triple> out;
  out.reserve(spec.relations.size() * static_cast<size_t>(spec.k));
  std::vector<int32_t> src(spec.k);
  std::vector<int32_t> dst(spec.k);
  for (const int32_t r : spec.relations) {
    if (r < 0 || r >= graph.num_relations()) {
      throw Error("random graph: unknown relation index " + std::to_string(r));
    }
    const auto& name = graph.relation(r).name;
    auto draw = [&](Side side, std::vector<int32_t>& into) {
      std::vector<double> w;
      try {
        w = SamplingWeights(graph.degree(r, side), spec.power);
      } catch (const Error&) {
        throw Error("random graph: relation '" + name +
                    "' has an all-zero degree vector");
      }
      std::discrete_distribution<int32_t> pick(w.begin(), w.end());
      for (auto& x : into) x = pick(rng);
    };
    draw(Side::kSrc, src);
    draw(Side::kDst, dst);
    for (int i = 0; i < spec.k; ++i) out.push_back({r, src[i], dst[i]});
  }
  return out;
}

}  // namespace kgdistill
