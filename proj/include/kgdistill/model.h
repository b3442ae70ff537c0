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

#ifndef KGDISTILL_MODEL_H_
#define KGDISTILL_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgdistill/graph.h"
#include "kgdistill/rng.h"

namespace kgdistill {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct TrainConfig {
  int d_teacher = 130;
  int d_student = 80;
  int n_layers = 2;
  int pretrain_epochs = 1;
  double pretrain_lr = 0.001;
  int finetune_epochs = 2000;
  double finetune_lr = 0.0005;
  double plateau_factor = 0.8;
  // The plateau rule is active only for the last `plateau_window` epochs.
  int plateau_window = 400;
  int plateau_patience = 20;
  double min_lr = 1e-6;
  uint64_t seed = 45;

  void Validate() const;
};

// Message directions of the encoder. Every declared relation r contributes a
// forward direction 2r (src -> dst) and an inverse direction 2r+1.
inline int ForwardDirection(int32_t relation) { return 2 * relation; }
inline int InverseDirection(int32_t relation) { return 2 * relation + 1; }

// Parameter-shaped collection of dense tensors.
struct TensorBundle {
  int dim = 0;
  // [node type], nodes x dim.
  std::vector<Matrix> node_embed;
  // [relation], 1 x dim. Used by the DistMult decoder.
  std::vector<Matrix> rel_embed;
  // [layer][direction], dim x dim. Messages are h_u * W.
  std::vector<std::vector<Matrix>> layer_weights;
  // [layer], dim x dim.
  std::vector<Matrix> self_weights;

  int num_layers() const { return static_cast<int>(self_weights.size()); }

  // Stable enumeration of all tensors, paired with TensorNames().
  std::vector<Matrix*> Tensors();
  std::vector<const Matrix*> Tensors() const;
  std::vector<std::string> TensorNames() const;
  int64_t NumScalars() const;

  void SetZero();
  // True when every tensor has the same shape as the matching one in `other`.
  bool SameShape(const TensorBundle& other) const;
  bool AllFinite() const;
};

struct ModelParams : TensorBundle {};

struct Gradients : TensorBundle {
  // Zero gradients shaped like `params`.
  static Gradients ZerosLike(const TensorBundle& params);
};

// Uniform(-1/sqrt(dim), 1/sqrt(dim)) initialization of every tensor.
ModelParams InitParams(const Schema& schema, int dim, int n_layers, Rng& rng);

}  // namespace kgdistill

#endif  // KGDISTILL_MODEL_H_
