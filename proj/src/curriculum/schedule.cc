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

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "kgdistill/error.h"

namespace kgdistill {
namespace {

double Lerp(double a, double b, double t) { return a + (b - a) * t; }

// Shortest round-trip text for a keyframe number.
std::string Num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double ToDouble(std::string_view s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("bad number '" + std::string(s) + "' in keyframes");
  }
  return v;
}

}  // namespace

void ScheduleSpec::Validate() const {
  if (total_epochs < 1) throw Error("schedule: total_epochs must be >= 1");
  if (keyframes.empty()) throw Error("schedule: no keyframes");
  if (keyframes.front().fraction != 0.0) {
    throw Error("schedule: first keyframe must be at fraction 0");
  }
  if (keyframes.size() > 1 && keyframes.back().fraction != 1.0) {
    throw Error("schedule: last keyframe must be at fraction 1");
  }
  for (size_t i = 0; i < keyframes.size(); ++i) {
    const auto& k = keyframes[i];
    if (i > 0 && !(k.fraction > keyframes[i - 1].fraction)) {
      throw Error("schedule: keyframe fractions must increase strictly");
    }
    const auto& w = k.weights;
    if (w.original < 0 || w.train_pseudo < 0 || w.random_pseudo < 0) {
      throw Error("schedule: weights must be non-negative");
    }
    if (og_floor > 0 && w.original < og_floor) {
      throw Error("schedule: ground-truth weight below the floor at fraction " +
                  Num(k.fraction));
    }
  }
}

ScheduleSpec ScheduleSpec::Default(int total_epochs) {
  ScheduleSpec s;
  s.policy = Policy::kLinear;
  s.total_epochs = total_epochs;
  s.keyframes = {
      {0.0, {1.0, 0.0, 0.0}},
      {0.3, {0.5, 1.0, 0.0}},
      {0.7, {0.05, 0.5, 1.0}},
      {1.0, {0.05, 0.0, 1.0}},
  };
  return s;
}

ScheduleSpec ScheduleSpec::Constant(const LossWeights& weights,
                                    int total_epochs) {
  ScheduleSpec s;
  s.policy = Policy::kConstant;
  s.total_epochs = total_epochs;
  s.keyframes = {{0.0, weights}};
  return s;
}

LossWeights WeightsAt(const ScheduleSpec& spec, int epoch) {
  if (epoch < 0 || epoch > spec.total_epochs) {
    throw Error("schedule: epoch " + std::to_string(epoch) +
                " outside [0, " + std::to_string(spec.total_epochs) + "]");
  }
  const auto& kf = spec.keyframes;
  if (kf.empty()) throw Error("schedule: no keyframes");
  if (spec.policy == ScheduleSpec::Policy::kConstant || kf.size() == 1) {
    return kf.front().weights;
  }
  const double x = static_cast<double>(epoch) / spec.total_epochs;
  // Last keyframe with fraction <= x.
  size_t i = 0;
  while (i + 1 < kf.size() && kf[i + 1].fraction <= x) ++i;
  if (spec.policy == ScheduleSpec::Policy::kStepwise || i + 1 == kf.size()) {
    return kf[i].weights;
  }
  const auto& a = kf[i];
  const auto& b = kf[i + 1];
  const double t = (x - a.fraction) / (b.fraction - a.fraction);
  return {Lerp(a.weights.original, b.weights.original, t),
          Lerp(a.weights.train_pseudo, b.weights.train_pseudo, t),
          Lerp(a.weights.random_pseudo, b.weights.random_pseudo, t)};
}

const char* PolicyName(ScheduleSpec::Policy policy) {
  switch (policy) {
    case ScheduleSpec::Policy::kLinear:
      return "linear";
    case ScheduleSpec::Policy::kStepwise:
      return "stepwise";
    case ScheduleSpec::Policy::kConstant:
      return "constant";
  }
  return "?";
}

ScheduleSpec::Policy ParsePolicy(const std::string& name) {
  if (name == "linear") return ScheduleSpec::Policy::kLinear;
  if (name == "stepwise") return ScheduleSpec::Policy::kStepwise;
  if (name == "constant") return ScheduleSpec::Policy::kConstant;
  throw Error("unknown schedule policy '" + name + "'");
}

std::string FormatKeyframes(const std::vector<Keyframe>& keyframes) {
  std::ostringstream out;
  for (size_t i = 0; i < keyframes.size(); ++i) {
    const auto& k = keyframes[i];
    if (i) out << ';';
    out << Num(k.fraction) << ':' << Num(k.weights.original) << ','
        << Num(k.weights.train_pseudo) << ',' << Num(k.weights.random_pseudo);
  }
  return out.str();
}

std::vector<Keyframe> ParseKeyframes(const std::string& text) {
  std::vector<Keyframe> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const size_t semi = rest.find(';');
    const std::string_view item = rest.substr(0, semi);
    rest = semi == std::string_view::npos ? std::string_view() : rest.substr(semi + 1);
    const size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw Error("keyframe '" + std::string(item) + "' lacks ':'");
    }
    Keyframe k;
    k.fraction = ToDouble(item.substr(0, colon));
    std::string_view w = item.substr(colon + 1);
    double vals[3];
    for (int j = 0; j < 3; ++j) {
      const size_t comma = w.find(',');
      if ((j < 2) == (comma == std::string_view::npos)) {
        throw Error("keyframe '" + std::string(item) + "' needs three weights");
      }
      vals[j] = ToDouble(w.substr(0, comma));
      w = j < 2 ? w.substr(comma + 1) : std::string_view();
    }
    k.weights = {vals[0], vals[1], vals[2]};
    out.push_back(k);
  }
  return out;
}

}  // namespace kgdistill
