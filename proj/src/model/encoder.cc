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

#include "kgdistill/encoder.h"

#include "kgdistill/error.h"

namespace kgdistill {
namespace {

void LeakyInPlace(Matrix* m) {
  double* x = m->data();
  for (Eigen::Index i = 0; i < m->size(); ++i) {
    if (x[i] < 0) x[i] *= kLeakySlope;
  }
}

// Multiplies `grad` by the leaky-rectifier derivative evaluated at `pre`.
void LeakyBackwardInPlace(const Matrix& pre, Matrix* grad) {
  const double* z = pre.data();
  double* g = grad->data();
  for (Eigen::Index i = 0; i < pre.size(); ++i) {
    if (z[i] < 0) g[i] *= kLeakySlope;
  }
}

}  // namespace

GraphEncoder::GraphEncoder(const HeteroGraph& graph)
    : schema_(graph.shared_schema()) {
  for (int32_t r = 0; r < graph.num_relations(); ++r) {
    const auto& info = graph.relation(r);
    Direction fwd{info.src_type, info.dst_type, {}, {}};
    Direction inv{info.dst_type, info.src_type, {}, {}};
    std::vector<double> fwd_count(graph.num_nodes(info.dst_type), 0.0);
    std::vector<double> inv_count(graph.num_nodes(info.src_type), 0.0);
    for (const Edge& e : graph.edges(r)) {
      fwd.pairs.push_back({e.src, e.dst});
      inv.pairs.push_back({e.dst, e.src});
      fwd_count[e.dst] += 1;
      inv_count[e.src] += 1;
    }
    for (auto& c : fwd_count) c = c > 0 ? 1.0 / c : 0.0;
    for (auto& c : inv_count) c = c > 0 ? 1.0 / c : 0.0;
    fwd.inv_count = std::move(fwd_count);
    inv.inv_count = std::move(inv_count);
    directions_.push_back(std::move(fwd));
    directions_.push_back(std::move(inv));
  }
}

void GraphEncoder::CheckShapes(const ModelParams& p) const {
  const Schema& s = *schema_;
  const int d = p.dim;
  auto fail = [](const std::string& what) {
    throw Error("model/graph dimension mismatch: " + what);
  };
  if (d < 1) fail("dim < 1");
  if (p.node_embed.size() != s.node_types.size()) fail("node type count");
  for (size_t t = 0; t < s.node_types.size(); ++t) {
    if (p.node_embed[t].rows() != s.node_types[t].count ||
        p.node_embed[t].cols() != d) {
      fail("node_embed[" + std::to_string(t) + "]");
    }
  }
  if (p.rel_embed.size() != s.relations.size()) fail("relation count");
  for (const auto& r : p.rel_embed) {
    if (r.rows() != 1 || r.cols() != d) fail("rel_embed");
  }
  if (p.layer_weights.size() != p.self_weights.size() || p.num_layers() < 1) {
    fail("layer count");
  }
  for (int l = 0; l < p.num_layers(); ++l) {
    if (p.layer_weights[l].size() != directions_.size()) fail("direction count");
    for (const auto& w : p.layer_weights[l]) {
      if (w.rows() != d || w.cols() != d) fail("layer_weights");
    }
    if (p.self_weights[l].rows() != d || p.self_weights[l].cols() != d) {
      fail("self_weights");
    }
  }
}

ForwardCache GraphEncoder::Forward(const ModelParams& params) const {
  CheckShapes(params);
  const int n_layers = params.num_layers();
  const int d = params.dim;
  const auto n_types = params.node_embed.size();

  ForwardCache cache;
  cache.hidden.reserve(n_layers + 1);
  cache.hidden.push_back(params.node_embed);
  for (int l = 0; l < n_layers; ++l) {
    const LayerStates& in = cache.hidden.back();
    LayerStates z(n_types);
    for (size_t t = 0; t < n_types; ++t) z[t] = in[t] * params.self_weights[l];

    auto& aggs = cache.agg.emplace_back();
    aggs.reserve(directions_.size());
    for (size_t k = 0; k < directions_.size(); ++k) {
      const Direction& dir = directions_[k];
      Matrix agg = Matrix::Zero(in[dir.to_type].rows(), d);
      const Matrix& src = in[dir.from_type];
      for (const Edge& e : dir.pairs) {
        agg.row(e.dst).noalias() += dir.inv_count[e.dst] * src.row(e.src);
      }
      z[dir.to_type].noalias() += agg * params.layer_weights[l][k];
      aggs.push_back(std::move(agg));
    }
    LayerStates out = z;
    if (l + 1 < n_layers) {
      for (auto& m : out) LeakyInPlace(&m);
    }
    cache.pre.push_back(std::move(z));
    cache.hidden.push_back(std::move(out));
  }
  return cache;
}

void GraphEncoder::Backward(const ModelParams& params,
                            const ForwardCache& cache,
                            std::vector<LayerStates> hidden_grads,
                            Gradients* grads) const {
  const int n_layers = params.num_layers();
  const int d = params.dim;
  const auto n_types = params.node_embed.size();
  if (static_cast<int>(hidden_grads.size()) != n_layers + 1) {
    throw Error("hidden gradient list must cover every layer");
  }
  auto ensure = [&](LayerStates& g, int l) {
    g.resize(n_types);
    for (size_t t = 0; t < n_types; ++t) {
      if (g[t].size() == 0) {
        g[t] = Matrix::Zero(cache.hidden[l][t].rows(), d);
      }
    }
  };

  for (int l = n_layers; l >= 1; --l) {
    LayerStates& g_out = hidden_grads[l];
    ensure(g_out, l);
    LayerStates& g_in = hidden_grads[l - 1];
    ensure(g_in, l - 1);

    // Through the activation.
    LayerStates dz = std::move(g_out);
    if (l < n_layers) {
      for (size_t t = 0; t < n_types; ++t) {
        LeakyBackwardInPlace(cache.pre[l - 1][t], &dz[t]);
      }
    }
    const LayerStates& in = cache.hidden[l - 1];
    for (size_t t = 0; t < n_types; ++t) {
      grads->self_weights[l - 1].noalias() += in[t].transpose() * dz[t];
      g_in[t].noalias() += dz[t] * params.self_weights[l - 1].transpose();
    }
    for (size_t k = 0; k < directions_.size(); ++k) {
      const Direction& dir = directions_[k];
      const Matrix& dz_to = dz[dir.to_type];
      grads->layer_weights[l - 1][k].noalias() +=
          cache.agg[l - 1][k].transpose() * dz_to;
      if (dir.pairs.empty()) continue;
      const Matrix dagg = dz_to * params.layer_weights[l - 1][k].transpose();
      Matrix& g_from = g_in[dir.from_type];
      for (const Edge& e : dir.pairs) {
        g_from.row(e.src).noalias() += dir.inv_count[e.dst] * dagg.row(e.dst);
      }
    }
  }
  for (size_t t = 0; t < n_types; ++t) grads->node_embed[t] += hidden_grads[0][t];
}

std::vector<double> DistMultScore(const LayerStates& hidden,
                                  std::span<const Matrix> rel_embed,
                                  const Schema& schema,
                                  std::span<const Triple> edges) {
  std::vector<double> out(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    const Triple& e = edges[i];
    const auto& info = schema.relations[e.relation];
    // Multiplying the endpoints first keeps the score bit-identical under a
    // head/tail swap.
    out[i] = (hidden[info.src_type].row(e.src).array() *
              hidden[info.dst_type].row(e.dst).array() *
              rel_embed[e.relation].row(0).array())
                 .sum();
  }
  return out;
}

void DistMultBackward(const LayerStates& hidden,
                      std::span<const Matrix> rel_embed, const Schema& schema,
                      std::span<const Triple> edges,
                      std::span<const double> dlogits, LayerStates* dhidden,
                      std::vector<Matrix>* drel) {
  for (size_t i = 0; i < edges.size(); ++i) {
    const double g = dlogits[i];
    if (g == 0.0) continue;
    const Triple& e = edges[i];
    const auto& info = schema.relations[e.relation];
    const auto h = hidden[info.src_type].row(e.src).array();
    const auto r = rel_embed[e.relation].row(0).array();
    const auto t = hidden[info.dst_type].row(e.dst).array();
    (*dhidden)[info.src_type].row(e.src).array() += g * r * t;
    (*dhidden)[info.dst_type].row(e.dst).array() += g * r * h;
    (*drel)[e.relation].row(0).array() += g * h * t;
  }
}

}  // namespace kgdistill
