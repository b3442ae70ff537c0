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

#ifndef KGDISTILL_SCHEDULE_H_
#define KGDISTILL_SCHEDULE_H_

#include <string>
#include <vector>

namespace kgdistill {

// Weights of the three loss terms: ground truth, teacher labels on the
// training graph, teacher labels on the random graph.
struct LossWeights {
  double original = 0.0;
  double train_pseudo = 0.0;
  double random_pseudo = 0.0;

  friend bool operator==(const LossWeights&, const LossWeights&) = default;
};

struct Keyframe {
  // Position in training as a fraction of total epochs, in [0, 1].
  double fraction = 0.0;
  LossWeights weights;
};

struct ScheduleSpec {
  enum class Policy { kLinear, kStepwise, kConstant };

  Policy policy = Policy::kLinear;
  std::vector<Keyframe> keyframes;
  // Minimum ground-truth weight at every keyframe; <= 0 disables the check.
  double og_floor = 0.05;
  int total_epochs = 1;

  // Keyframe fractions must start at 0, increase strictly and end at 1 (a
  // single keyframe at 0 is also accepted); weights must be non-negative.
  void Validate() const;

  // Ground truth decays to the floor, train-graph pseudo labels rise then
  // fall, random-graph pseudo labels rise last.
  static ScheduleSpec Default(int total_epochs);
  // One keyframe held for the whole run.
  static ScheduleSpec Constant(const LossWeights& weights, int total_epochs);
};

// Loss weights at `epoch` in [0, total_epochs]. Linear interpolates each
// component between the bracketing keyframes, stepwise holds the last
// keyframe reached, constant always returns the first keyframe.
LossWeights WeightsAt(const ScheduleSpec& spec, int epoch);

const char* PolicyName(ScheduleSpec::Policy policy);
ScheduleSpec::Policy ParsePolicy(const std::string& name);

// "f:og,pe,pr;f:og,pe,pr;..." <-> keyframes.
std::string FormatKeyframes(const std::vector<Keyframe>& keyframes);
std::vector<Keyframe> ParseKeyframes(const std::string& text);

}  // namespace kgdistill

#endif  // KGDISTILL_SCHEDULE_H_
