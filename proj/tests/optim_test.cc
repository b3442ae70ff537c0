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
#include <cstring>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "kgdistill/adam.h"
#include "kgdistill/error.h"
#include "kgdistill/plateau.h"
#include "test_util.h"

namespace kgdistill {
namespace {

ModelParams SmallParams(uint64_t seed) {
  const HeteroGraph g = testing::RandomGraph(2, 4, 2, 3, seed);
  Rng rng(seed);
  return InitParams(g.schema(), 3, 2, rng);
}

Gradients RandomGrads(const ModelParams& p, uint64_t seed) {
  Gradients g = Gradients::ZerosLike(p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (Matrix* m : g.Tensors()) {
    for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = normal(rng);
  }
  return g;
}

bool BitEqual(const TensorBundle& a, const TensorBundle& b) {
  const auto x = a.Tensors();
  const auto y = b.Tensors();
  if (x.size() != y.size()) return false;
  for (size_t k = 0; k < x.size(); ++k) {
    if (x[k]->rows() != y[k]->rows() || x[k]->cols() != y[k]->cols()) return false;
    if (std::memcmp(x[k]->data(), y[k]->data(), sizeof(double) * x[k]->size())) {
      return false;
    }
  }
  return true;
}

TEST(Adam, ZeroGradientLeavesParamsUnchanged) {
  const ModelParams p = SmallParams(1);
  const auto [q, state] =
      AdamStep(p, Gradients::ZerosLike(p), AdamState::ZerosLike(p), 0.1);
  EXPECT_TRUE(BitEqual(p, q));
  EXPECT_EQ(state.step, 1);
}

TEST(Adam, FirstStepIsNormalizedGradient) {
  const ModelParams p = SmallParams(2);
  const Gradients g = RandomGrads(p, 3);
  const double lr = 0.01;
  const auto [q, state] = AdamStep(p, g, AdamState::ZerosLike(p), lr);
  const auto before = p.Tensors();
  const auto after = q.Tensors();
  const auto grad = g.Tensors();
  for (size_t k = 0; k < before.size(); ++k) {
    for (Eigen::Index i = 0; i < before[k]->size(); ++i) {
      const double gi = grad[k]->data()[i];
      const double expected = -lr * gi / (std::abs(gi) + 1e-8);
      EXPECT_NEAR(after[k]->data()[i] - before[k]->data()[i], expected, 1e-15);
    }
  }
}

TEST(Adam, Deterministic) {
  const ModelParams p = SmallParams(4);
  AdamState s = AdamState::ZerosLike(p);
  s.step = 3;
  s.first_moment = RandomGrads(p, 8);
  s.second_moment = RandomGrads(p, 9);
  for (Matrix* m : s.second_moment.Tensors()) *m = m->cwiseAbs();
  const Gradients g = RandomGrads(p, 5);
  const auto a = AdamStep(p, g, s, 0.003);
  const auto b = AdamStep(p, g, s, 0.003);
  EXPECT_TRUE(BitEqual(a.first, b.first));
  EXPECT_TRUE(BitEqual(a.second.first_moment, b.second.first_moment));
  EXPECT_TRUE(BitEqual(a.second.second_moment, b.second.second_moment));

  ModelParams in_place = p;
  AdamState in_place_state = s;
  AdamStepInPlace(&in_place, g, &in_place_state, 0.003);
  EXPECT_TRUE(BitEqual(a.first, in_place));
}

TEST(Adam, NonFiniteGradientNamesTensor) {
  ModelParams p = SmallParams(6);
  const ModelParams original = p;
  Gradients g = Gradients::ZerosLike(p);
  g.self_weights[1](0, 2) = std::numeric_limits<double>::quiet_NaN();
  AdamState s = AdamState::ZerosLike(p);
  try {
    AdamStepInPlace(&p, g, &s, 0.1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const auto names = p.TensorNames();
    const std::string what = e.what();
    bool named = false;
    for (const auto& n : names) {
      if (n.find("self") != std::string::npos && what.find(n) != std::string::npos) {
        named = true;
      }
    }
    EXPECT_TRUE(named) << what;
  }
  EXPECT_TRUE(BitEqual(p, original));
  EXPECT_EQ(s.step, 0);
}

TEST(Adam, ShapeMismatchRejected) {
  ModelParams p = SmallParams(7);
  Gradients g = Gradients::ZerosLike(SmallParams(7));
  g.rel_embed[0] = Matrix::Zero(1, 5);
  AdamState s = AdamState::ZerosLike(p);
  EXPECT_THROW(AdamStepInPlace(&p, g, &s, 0.1), Error);
}

PlateauOptions Options(int total, int window) {
  PlateauOptions o;
  o.total_epochs = total;
  o.window = window;
  o.factor = 0.8;
  o.patience = 20;
  o.base_lr = 0.0005;
  o.min_lr = 1e-6;
  return o;
}

TEST(Plateau, ImprovingMetricKeepsMultiplier) {
  std::vector<double> history(500);
  for (size_t i = 0; i < history.size(); ++i) history[i] = 0.001 * i;
  EXPECT_EQ(PlateauLr(history, Options(500, 400)), 1.0);
}

TEST(Plateau, FlatMetricInsideWindowReducesTwice) {
  // 100 epochs, window 40: the final 40 epochs repeat the best value.
  std::vector<double> history(100);
  for (int e = 0; e < 60; ++e) history[e] = 0.01 * e;
  for (int e = 60; e < 100; ++e) history[e] = history[59];
  PlateauSchedule schedule(Options(100, 40));
  for (int e = 0; e < 100; ++e) schedule.Update(e, history[e]);
  EXPECT_EQ(schedule.reductions(), 2);
  EXPECT_NEAR(schedule.multiplier(), 0.64, 1e-15);
  EXPECT_NEAR(PlateauLr(history, Options(100, 40)), 0.64, 1e-15);
}

TEST(Plateau, NoReductionBeforeWindow) {
  // A long flat stretch entirely before the window start.
  const std::vector<double> history(1000, 0.5);
  EXPECT_EQ(PlateauLr(history, Options(2000, 400)), 1.0);
  PlateauSchedule schedule(Options(2000, 400));
  for (int e = 0; e < 1600; ++e) {
    EXPECT_EQ(schedule.Update(e, 0.5), 1.0) << e;
  }
}

TEST(Plateau, FloorAtMinimumLearningRate) {
  PlateauOptions o = Options(10000, 10000);
  o.patience = 1;
  const std::vector<double> history(5000, 0.1);
  EXPECT_DOUBLE_EQ(PlateauLr(history, o) * o.base_lr, o.min_lr);
}

TEST(Plateau, FromConfig) {
  TrainConfig c;
  const PlateauOptions o = PlateauOptions::FromConfig(c);
  EXPECT_EQ(o.total_epochs, 2000);
  EXPECT_EQ(o.window, 400);
  EXPECT_EQ(o.factor, 0.8);
  EXPECT_EQ(o.patience, 20);
  EXPECT_EQ(o.min_lr, 1e-6);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.finetune_lr = 0;
  EXPECT_THROW(c.Validate(), Error);
  c = TrainConfig();
  c.plateau_factor = 1.0;
  EXPECT_THROW(c.Validate(), Error);
  c = TrainConfig();
  c.d_student = 0;
  EXPECT_THROW(c.Validate(), Error);
}

}  // namespace
}  // namespace kgdistill
