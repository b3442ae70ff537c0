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

#include "kgdistill/lsp.h"

#include <algorithm>
#include <cmath>

#include "kgdistill/error.h"

namespace kgdistill {

Neighborhoods::Neighborhoods(const HeteroGraph& graph) {
  base_.push_back(0);
  for (int32_t t = 0; t < graph.num_node_types(); ++t) {
    base_.push_back(base_.back() + graph.num_nodes(t));
  }
  std::vector<std::vector<int64_t>> adj(base_.back());
  for (int32_t r = 0; r < graph.num_relations(); ++r) {
    const auto& info = graph.relation(r);
    for (const Edge& e : graph.edges(r)) {
      const int64_t u = global(info.src_type, e.src);
      const int64_t v = global(info.dst_type, e.dst);
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  start_.reserve(adj.size() + 1);
  start_.push_back(0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (const int64_t g : list) nodes_.push_back(node(g));
    start_.push_back(static_cast<int64_t>(nodes_.size()));
  }
}

Neighborhoods::Node Neighborhoods::node(int64_t g) const {
  const auto it = std::upper_bound(base_.begin(), base_.end(), g);
  const auto type = static_cast<int32_t>(it - base_.begin()) - 1;
  return {type, static_cast<int32_t>(g - base_[type])};
}

namespace {

// Kernel values k(h_v, h_u) for all neighbors, and the log-softmax over them.
void KernelLogSoftmax(const LayerStates& h, const Neighborhoods::Node& v,
                      std::span<const Neighborhoods::Node> nbrs, double sigma,
                      std::vector<double>* kernel, std::vector<double>* log_p) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  const auto hv = h[v.type].row(v.index);
  kernel->resize(nbrs.size());
  log_p->resize(nbrs.size());
  double max_k = -1.0;
  for (size_t i = 0; i < nbrs.size(); ++i) {
    const double d2 = (hv - h[nbrs[i].type].row(nbrs[i].index)).squaredNorm();
    (*kernel)[i] = std::exp(-d2 * inv);
    max_k = std::max(max_k, (*kernel)[i]);
  }
  double z = 0.0;
  for (const double k : *kernel) z += std::exp(k - max_k);
  const double log_z = max_k + std::log(z);
  for (size_t i = 0; i < nbrs.size(); ++i) (*log_p)[i] = (*kernel)[i] - log_z;
}

}  // namespace

double LocalStructureLoss(std::span<const LayerStates* const> teacher,
                          std::span<const LayerStates* const> student,
                          const Neighborhoods& neighborhoods, double sigma,
                          double weight,
                          std::span<LayerStates* const> student_grads) {
  if (teacher.size() != student.size()) {
    throw Error("local structure loss: teacher and student layer counts differ");
  }
  if (!student_grads.empty() && student_grads.size() != student.size()) {
    throw Error("local structure loss: gradient list has the wrong length");
  }
  if (!(sigma > 0)) throw Error("local structure loss: sigma must be positive");

  int64_t count = 0;
  for (int64_t g = 0; g < neighborhoods.num_nodes(); ++g) {
    if (!neighborhoods.neighbors(g).empty()) ++count;
  }
  if (count == 0) return 0.0;
  const double scale = weight / static_cast<double>(count);
  const double inv_sigma2 = 1.0 / (sigma * sigma);

  double total = 0.0;
  std::vector<double> kt, lpt, ks, lps;
  for (size_t l = 0; l < teacher.size(); ++l) {
    const LayerStates& ht = *teacher[l];
    const LayerStates& hs = *student[l];
    LayerStates* grad = student_grads.empty() ? nullptr : student_grads[l];
    for (int64_t g = 0; g < neighborhoods.num_nodes(); ++g) {
      const auto nbrs = neighborhoods.neighbors(g);
      if (nbrs.empty()) continue;
      const auto v = neighborhoods.node(g);
      KernelLogSoftmax(ht, v, nbrs, sigma, &kt, &lpt);
      KernelLogSoftmax(hs, v, nbrs, sigma, &ks, &lps);
      double kl = 0.0;
      for (size_t i = 0; i < nbrs.size(); ++i) {
        kl += std::exp(lpt[i]) * (lpt[i] - lps[i]);
      }
      total += kl;
      if (!grad || scale == 0.0) continue;
      // dKL/dk_u = q_u - p_u;  dk_u/dh_v = -k_u (h_v - h_u) / sigma^2.
      const auto hv = hs[v.type].row(v.index);
      for (size_t i = 0; i < nbrs.size(); ++i) {
        const double c =
            scale * (std::exp(lps[i]) - std::exp(lpt[i])) * (-ks[i] * inv_sigma2);
        if (c == 0.0) continue;
        const auto& u = nbrs[i];
        const Eigen::RowVectorXd diff = hv - hs[u.type].row(u.index);
        (*grad)[v.type].row(v.index) += c * diff;
        (*grad)[u.type].row(u.index) -= c * diff;
      }
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace kgdistill
