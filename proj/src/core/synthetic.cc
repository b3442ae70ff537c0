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

#include "kgdistill/synthetic.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgdistill/error.h"
#include "kgdistill/rng.h"

namespace kgdistill {
namespace {

constexpr double kMinExpectedEdges = 10.0;

double Sigmoid(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x))
                : std::exp(x) / (1.0 + std::exp(x));
}

// Bias b with sum_i sigmoid(s_i + b) == target, by bisection.
double SolveBias(const std::vector<double>& s, double target) {
  double lo = -100.0;
  double hi = 100.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    double sum = 0.0;
    for (const double x : s) sum += Sigmoid(x + mid);
    (sum < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void SyntheticSpec::Validate() const {
  if (n_types < 1 || n_relations < 1 || nodes_per_type < 1 || latent_dim < 1) {
    throw Error("synthetic graph counts must be at least 1");
  }
  if (!(density > 0.0 && density < 1.0)) {
    throw Error("density must lie in (0, 1)");
  }
  const double expected = density * nodes_per_type * nodes_per_type;
  if (expected < kMinExpectedEdges) {
    throw Error("density yields " + std::to_string(expected) +
                " expected edges per relation; at least 10 are required");
  }
}

RelationInfo SyntheticRelation(int r, int n_types) {
  const int src = r % n_types;
  int dst = (r + 1 + r / n_types) % n_types;
  if (dst == src && n_types > 1) dst = (dst + 1) % n_types;
  return {"rel" + std::to_string(r), src, dst};
}

SyntheticKg GenerateSyntheticKg(const SyntheticSpec& spec) {
  spec.Validate();
  Rng rng = MakeRng(spec.seed, "synthetic");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::lognormal_distribution<double> norm_scale(0.0, spec.norm_log_sigma);
  const int d = spec.latent_dim;

  LatentFactors latent;
  std::vector<NodeType> types;
  for (int t = 0; t < spec.n_types; ++t) {
    types.push_back({"type" + std::to_string(t), spec.nodes_per_type});
    auto& nodes = latent.node.emplace_back(spec.nodes_per_type);
    for (auto& z : nodes) {
      z.resize(d);
      double sq = 0.0;
      for (auto& x : z) {
        x = normal(rng);
        sq += x * x;
      }
      // Unit direction times a heavy-tailed norm scaled to ~sqrt(d).
      const double scale = norm_scale(rng) * std::sqrt(static_cast<double>(d)) /
                           std::sqrt(std::max(sq, 1e-300));
      for (auto& x : z) x *= scale;
    }
  }
  std::vector<RelationInfo> relations;
  for (int r = 0; r < spec.n_relations; ++r) {
    relations.push_back(SyntheticRelation(r, spec.n_types));
    auto& z = latent.relation.emplace_back(d);
    for (auto& x : z) x = normal(rng);
  }

  auto schema = MakeIndexedSchema(std::move(types), relations);
  const double score_scale = spec.sharpness / std::sqrt(static_cast<double>(d));
  const int n = spec.nodes_per_type;
  const double target = spec.density * n * n;

  std::vector<std::vector<Edge>> edges(spec.n_relations);
  std::vector<double> expected(spec.n_relations, 0.0);
  std::vector<double> variance(spec.n_relations, 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(static_cast<size_t>(n) * n);
  for (int r = 0; r < spec.n_relations; ++r) {
    const auto& zr = latent.relation[r];
    const auto& src_nodes = latent.node[relations[r].src_type];
    const auto& dst_nodes = latent.node[relations[r].dst_type];
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += src_nodes[u][i] * zr[i] * dst_nodes[v][i];
        w[static_cast<size_t>(u) * n + v] = score_scale * s;
      }
    }
    const double b = SolveBias(w, target);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        const double p = Sigmoid(w[static_cast<size_t>(u) * n + v] + b);
        expected[r] += p;
        variance[r] += p * (1.0 - p);
        if (unit(rng) < p) edges[r].push_back({u, v});
      }
    }
  }
  return SyntheticKg{HeteroGraph(std::move(schema), std::move(edges)),
                     std::move(latent), std::move(expected),
                     std::move(variance)};
}

}  // namespace kgdistill
