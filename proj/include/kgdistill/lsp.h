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

#ifndef KGDISTILL_LSP_H_
#define KGDISTILL_LSP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "kgdistill/encoder.h"
#include "kgdistill/graph.h"

namespace kgdistill {

// Distinct one-hop neighbors of every node over all relations and both edge
// directions. Nodes are addressed by (type, index).
class Neighborhoods {
 public:
  struct Node {
    int32_t type;
    int32_t index;
  };

  explicit Neighborhoods(const HeteroGraph& graph);

  int32_t num_types() const { return static_cast<int32_t>(base_.size()) - 1; }
  int64_t num_nodes() const { return base_.back(); }
  Node node(int64_t global) const;
  int64_t global(int32_t type, int32_t index) const { return base_[type] + index; }
  std::span<const Node> neighbors(int64_t global) const {
    return {nodes_.data() + start_[global],
            static_cast<size_t>(start_[global + 1] - start_[global])};
  }
  int64_t num_pairs() const { return static_cast<int64_t>(nodes_.size()); }

 private:
  std::vector<int64_t> base_;   // first global id of every type, plus total
  std::vector<int64_t> start_;  // CSR offsets
  std::vector<Node> nodes_;
};

// Local-structure-preserving distillation loss. For every node v with a
// nonempty neighborhood and every distilled layer,
//   LS_v(u) = softmax_{u in N(v)} k(h_v, h_u),  k = exp(-|h_v - h_u|^2 / 2s^2)
// and the loss sums over layers the mean over v of KL(LS_v^teacher || LS_v^student).
// `teacher` and `student` list the distilled layers in the same order. When
// `student_grads` is non-null, weight * d(loss)/d(student[l]) is accumulated
// into (*student_grads)[l].
double LocalStructureLoss(std::span<const LayerStates* const> teacher,
                          std::span<const LayerStates* const> student,
                          const Neighborhoods& neighborhoods, double sigma,
                          double weight,
                          std::span<LayerStates* const> student_grads = {});

}  // namespace kgdistill

#endif  // KGDISTILL_LSP_H_
