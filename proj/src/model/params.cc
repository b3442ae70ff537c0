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

#include <cmath>

#include "kgdistill/error.h"
#include "kgdistill/model.h"

namespace kgdistill {

void TrainConfig::Validate() const {
  if (d_teacher < 1 || d_student < 1) throw Error("dimensions must be >= 1");
  if (n_layers < 1) throw Error("n_layers must be >= 1");
  if (pretrain_epochs < 0 || finetune_epochs < 0) {
    throw Error("epoch counts must be non-negative");
  }
  if (!(pretrain_lr > 0) || !(finetune_lr > 0)) {
    throw Error("learning rates must be positive");
  }
  if (!(plateau_factor > 0 && plateau_factor < 1)) {
    throw Error("plateau_factor must lie in (0, 1)");
  }
  if (plateau_window < 0 || plateau_patience < 1) {
    throw Error("invalid plateau window or patience");
  }
}

std::vector<Matrix*> TensorBundle::Tensors() {
  std::vector<Matrix*> out;
  for (auto& m : node_embed) out.push_back(&m);
  for (auto& m : rel_embed) out.push_back(&m);
  for (auto& layer : layer_weights) {
    for (auto& m : layer) out.push_back(&m);
  }
  for (auto& m : self_weights) out.push_back(&m);
  return out;
}

std::vector<const Matrix*> TensorBundle::Tensors() const {
  std::vector<const Matrix*> out;
  for (auto* m : const_cast<TensorBundle*>(this)->Tensors()) out.push_back(m);
  return out;
}

std::vector<std::string> TensorBundle::TensorNames() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < node_embed.size(); ++i) {
    out.push_back("node_embed[" + std::to_string(i) + "]");
  }
  for (size_t i = 0; i < rel_embed.size(); ++i) {
    out.push_back("rel_embed[" + std::to_string(i) + "]");
  }
  for (size_t l = 0; l < layer_weights.size(); ++l) {
    for (size_t k = 0; k < layer_weights[l].size(); ++k) {
      out.push_back("layer_weights[" + std::to_string(l) + "][" +
                    std::to_string(k) + "]");
    }
  }
  for (size_t l = 0; l < self_weights.size(); ++l) {
    out.push_back("self_weights[" + std::to_string(l) + "]");
  }
  return out;
}

int64_t TensorBundle::NumScalars() const {
  int64_t n = 0;
  for (const auto* m : Tensors()) n += m->size();
  return n;
}

void TensorBundle::SetZero() {
  for (auto* m : Tensors()) m->setZero();
}

bool TensorBundle::SameShape(const TensorBundle& other) const {
  const auto a = Tensors();
  const auto b = other.Tensors();
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i]->rows() != b[i]->rows() || a[i]->cols() != b[i]->cols()) {
      return false;
    }
  }
  return true;
}

bool TensorBundle::AllFinite() const {
  for (const auto* m : Tensors()) {
    if (!m->allFinite()) return false;
  }
  return true;
}

Gradients Gradients::ZerosLike(const TensorBundle& params) {
  Gradients g;
  static_cast<TensorBundle&>(g) = params;
  g.SetZero();
  return g;
}

ModelParams InitParams(const Schema& schema, int dim, int n_layers, Rng& rng) {
  if (dim < 1 || n_layers < 1) throw Error("invalid model shape");
  const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
  std::uniform_real_distribution<double> uniform(-bound, bound);
  auto fill = [&](int rows, int cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng);
    return m;
  };

  ModelParams p;
  p.dim = dim;
  for (const auto& t : schema.node_types) p.node_embed.push_back(fill(t.count, dim));
  for (size_t r = 0; r < schema.relations.size(); ++r) {
    p.rel_embed.push_back(fill(1, dim));
  }
  const auto n_directions = 2 * schema.relations.size();
  for (int l = 0; l < n_layers; ++l) {
    auto& layer = p.layer_weights.emplace_back();
    for (size_t k = 0; k < n_directions; ++k) layer.push_back(fill(dim, dim));
    p.self_weights.push_back(fill(dim, dim));
  }
  return p;
}

}  // namespace kgdistill
