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

#include "kgdistill/schedule.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "kgdistill/error.h"

namespace kgdistill {
namespace {

double Component(const LossWeights& w, int c) {
  return c == 0 ? w.original : c == 1 ? w.train_pseudo : w.random_pseudo;
}

double MaxSlope(const ScheduleSpec& s, int c) {
  double slope = 0;
  for (size_t i = 0; i + 1 < s.keyframes.size(); ++i) {
    const auto& a = s.keyframes[i];
    const auto& b = s.keyframes[i + 1];
    slope = std::max(slope, std::abs(Component(b.weights, c) - Component(a.weights, c)) /
                                (b.fraction - a.fraction));
  }
  return slope;
}

TEST(Schedule, DefaultEndpoints) {
  const ScheduleSpec s = ScheduleSpec::Default(2000);
  EXPECT_NO_THROW(s.Validate());
  EXPECT_EQ(WeightsAt(s, 0), (LossWeights{1.0, 0.0, 0.0}));
  EXPECT_EQ(WeightsAt(s, 2000).original, 0.05);
}

TEST(Schedule, LinearMidpoint) {
  ScheduleSpec s;
  s.policy = ScheduleSpec::Policy::kLinear;
  s.total_epochs = 2000;
  s.keyframes = {{0.0, {1.0, 0.0, 0.0}}, {1.0, {0.05, 0.0, 0.0}}};
  EXPECT_NEAR(WeightsAt(s, 1000).original, 0.525, 1e-15);
  s.total_epochs = 7;
  EXPECT_NEAR(WeightsAt(s, 3).original, 1.0 - 0.95 * 3 / 7.0, 1e-15);
}

TEST(Schedule, LinearIsContinuous) {
  for (const int total : {10, 137, 2000}) {
    const ScheduleSpec s = ScheduleSpec::Default(total);
    for (int c = 0; c < 3; ++c) {
      const double bound = MaxSlope(s, c) / total + 1e-12;
      for (int e = 0; e < total; ++e) {
        const double step = std::abs(Component(WeightsAt(s, e + 1), c) -
                                     Component(WeightsAt(s, e), c));
        EXPECT_LE(step, bound) << "component " << c << " epoch " << e;
      }
    }
  }
}

TEST(Schedule, StepwiseChangesOnlyAtKeyframes) {
  ScheduleSpec s = ScheduleSpec::Default(100);
  s.policy = ScheduleSpec::Policy::kStepwise;
  std::vector<int> changes;
  for (int e = 0; e < 100; ++e) {
    if (!(WeightsAt(s, e + 1) == WeightsAt(s, e))) changes.push_back(e + 1);
  }
  EXPECT_EQ(changes, (std::vector<int>{30, 70, 100}));
  EXPECT_EQ(WeightsAt(s, 29), s.keyframes[0].weights);
  EXPECT_EQ(WeightsAt(s, 30), s.keyframes[1].weights);
  EXPECT_EQ(WeightsAt(s, 99), s.keyframes[2].weights);
}

TEST(Schedule, DefaultRespectsFloor) {
  for (const auto policy : {ScheduleSpec::Policy::kLinear, ScheduleSpec::Policy::kStepwise}) {
    ScheduleSpec s = ScheduleSpec::Default(997);
    s.policy = policy;
    for (int e = 0; e <= 997; ++e) EXPECT_GE(WeightsAt(s, e).original, 0.05) << e;
  }
}

TEST(Schedule, LinearStaysBetweenKeyframes) {
  const ScheduleSpec s = ScheduleSpec::Default(500);
  for (int e = 0; e <= 500; ++e) {
    const LossWeights w = WeightsAt(s, e);
    for (int c = 0; c < 3; ++c) {
      EXPECT_GE(Component(w, c), 0.0);
      EXPECT_LE(Component(w, c), 1.0);
    }
  }
}

TEST(Schedule, ConstantAndSingleKeyframe) {
  const ScheduleSpec c = ScheduleSpec::Constant({0.05, 1.0, 1.0}, 40);
  EXPECT_NO_THROW(c.Validate());
  for (int e = 0; e <= 40; ++e) EXPECT_EQ(WeightsAt(c, e), (LossWeights{0.05, 1.0, 1.0}));
  ScheduleSpec single = c;
  single.policy = ScheduleSpec::Policy::kLinear;
  EXPECT_EQ(WeightsAt(single, 17), (LossWeights{0.05, 1.0, 1.0}));
}

TEST(Schedule, OutOfRangeEpochRejected) {
  const ScheduleSpec s = ScheduleSpec::Default(10);
  EXPECT_THROW(WeightsAt(s, -1), Error);
  EXPECT_THROW(WeightsAt(s, 11), Error);
}

TEST(Schedule, ValidationRejectsBadKeyframes) {
  ScheduleSpec s = ScheduleSpec::Default(10);
  s.keyframes[1].fraction = 0.8;
  EXPECT_THROW(s.Validate(), Error);
  s = ScheduleSpec::Default(10);
  s.keyframes.back().fraction = 0.9;
  EXPECT_THROW(s.Validate(), Error);
  s = ScheduleSpec::Default(10);
  s.keyframes[2].weights.train_pseudo = -1;
  EXPECT_THROW(s.Validate(), Error);
  s = ScheduleSpec::Default(10);
  s.keyframes[3].weights.original = 0.01;
  EXPECT_THROW(s.Validate(), Error);
  s.og_floor = 0;
  EXPECT_NO_THROW(s.Validate());
  s.total_epochs = 0;
  EXPECT_THROW(s.Validate(), Error);
}

TEST(Schedule, KeyframeTextRoundTrip) {
  const auto kf = ScheduleSpec::Default(1).keyframes;
  const auto back = ParseKeyframes(FormatKeyframes(kf));
  ASSERT_EQ(back.size(), kf.size());
  for (size_t i = 0; i < kf.size(); ++i) {
    EXPECT_EQ(back[i].fraction, kf[i].fraction);
    EXPECT_EQ(back[i].weights, kf[i].weights);
  }
  EXPECT_THROW(ParseKeyframes("0:1,0"), Error);
  EXPECT_THROW(ParseKeyframes("0-1,0,0"), Error);
  EXPECT_EQ(ParsePolicy(PolicyName(ScheduleSpec::Policy::kStepwise)),
            ScheduleSpec::Policy::kStepwise);
  EXPECT_THROW(ParsePolicy("cosine"), Error);
}

}  // namespace
}  // namespace kgdistill
