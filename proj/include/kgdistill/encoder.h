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

#ifndef KGDISTILL_ENCODER_H_
#define KGDISTILL_ENCODER_H_

#include <memory>
#include <span>
#include <vector>

#include "kgdistill/graph.h"
#include "kgdistill/model.h"

namespace kgdistill {

constexpr double kLeakySlope = 0.01;

// Per-type hidden states for one layer.
using LayerStates = std::vector<Matrix>;

struct ForwardCache {
  // hidden[0] are the node embeddings; hidden[l] is the output of layer l.
  // The last layer is linear, earlier layers are leaky-rectified.
  std::vector<LayerStates> hidden;
  // pre[l - 1] is the pre-activation of layer l.
  std::vector<LayerStates> pre;
  // agg[l - 1][direction] is the neighbor mean fed into layer l, with one row
  // per node of the receiving type.
  std::vector<std::vector<Matrix>> agg;

  const LayerStates& output() const { return hidden.back(); }
};

// Relational message-passing encoder over a fixed graph:
//   z_v = h_v W_self + sum_dir mean_{u in N_dir(v)} h_u W_dir
// where every relation contributes a forward and an inverse direction and
// the mean over an empty neighborhood is zero.
class GraphEncoder {
 public:
  explicit GraphEncoder(const HeteroGraph& graph);

  const Schema& schema() const { return *schema_; }

  // Throws kgdistill::Error if `params` does not fit the graph.
  void CheckShapes(const ModelParams& params) const;

  ForwardCache Forward(const ModelParams& params) const;

  // Accumulates into `grads` the gradient of a loss whose partial derivatives
  // with respect to the hidden states are `hidden_grads[l][type]`, for
  // l = 0..num_layers. Empty matrices mean "no direct dependency".
  void Backward(const ModelParams& params, const ForwardCache& cache,
                std::vector<LayerStates> hidden_grads, Gradients* grads) const;

 private:
  struct Direction {
    int32_t from_type;
    int32_t to_type;
    std::vector<Edge> pairs;  // (from, to)
    std::vector<double> inv_count;  // per receiving node, 0 when isolated
  };

  std::shared_ptr<const Schema> schema_;
  std::vector<Direction> directions_;
};

// DistMult trilinear score sum_i h_src[i] * r[i] * h_dst[i] for each triple.
std::vector<double> DistMultScore(const LayerStates& hidden,
                                  std::span<const Matrix> rel_embed,
                                  const Schema& schema,
                                  std::span<const Triple> edges);

// Adds d(loss)/d(hidden) and d(loss)/d(rel_embed) given d(loss)/d(logit).
void DistMultBackward(const LayerStates& hidden,
                      std::span<const Matrix> rel_embed, const Schema& schema,
                      std::span<const Triple> edges,
                      std::span<const double> dlogits, LayerStates* dhidden,
                      std::vector<Matrix>* drel);

}  // namespace kgdistill

#endif  // KGDISTILL_ENCODER_H_
