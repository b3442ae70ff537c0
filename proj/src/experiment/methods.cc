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

#include <algorithm>

#include "kgdistill/checkpoint.h"
#include "kgdistill/error.h"
#include "kgdistill/experiment.h"

namespace kgdistill {

const std::vector<MethodPresetInfo>& MethodPresets() {
  static const std::vector<MethodPresetInfo> kPresets = {
      {"baseline", "ground truth only"},
      {"bkd", "teacher labels on the training graph, constant weights"},
      {"bkd-curriculum", "bkd under the curriculum schedule"},
      {"lsp1", "local-structure loss on the last layer"},
      {"lsp2", "local-structure loss on the last two layers"},
      {"flykd", "training-graph and random-graph labels, linear curriculum"},
      {"flykd-nocurr", "flykd with constant weights"},
      {"flykd-stepwise", "flykd with a stepwise curriculum"},
      {"flykd-no-train-pseudo", "flykd without training-graph labels"},
      {"flykd-fixed", "flykd drawing one random graph for the whole run"},
      {"flykd-occasional", "flykd redrawing the random graph periodically"},
      {"flykd-strong", "flykd keeping only confident random-graph labels"},
      {"flykd-modprob", "flykd with sharpened degree weights"},
  };
  return kPresets;
}

MethodSpec MethodPreset(const std::string& name, const MethodDefaults& d,
                        int total_epochs) {
  const int total = std::max(1, total_epochs);
  ScheduleSpec curriculum = ScheduleSpec::Default(total);
  if (!d.keyframes.empty()) curriculum.keyframes = d.keyframes;
  curriculum.og_floor = d.og_floor;

  MethodSpec s;
  s.distill_all_relations = d.distill_all_relations;
  s.random_graph.k = d.k;
  s.random_graph.two_sided_threshold = d.two_sided_threshold;
  s.lsp_kernel_sigma = d.lsp_sigma;

  if (name == "baseline") {
    s.method = Method::kBaseline;
    s.curriculum = ScheduleSpec::Constant({1.0, 0.0, 0.0}, total);
  } else if (name == "bkd") {
    s.method = Method::kBkd;
    s.curriculum = ScheduleSpec::Constant(d.bkd_constant, total);
  } else if (name == "bkd-curriculum") {
    s.method = Method::kBkd;
    s.curriculum = curriculum;
  } else if (name == "lsp1" || name == "lsp2") {
    s.method = Method::kLsp;
    s.lsp_layers = name == "lsp1" ? 1 : 2;
    s.curriculum = ScheduleSpec::Constant({1.0, d.lsp_weight, 0.0}, total);
  } else if (name.starts_with("flykd")) {
    s.method = Method::kFlykd;
    s.curriculum = curriculum;
    if (name == "flykd-nocurr") {
      s.curriculum = ScheduleSpec::Constant(d.flykd_constant, total);
    } else if (name == "flykd-stepwise") {
      s.curriculum.policy = ScheduleSpec::Policy::kStepwise;
    } else if (name == "flykd-no-train-pseudo") {
      s.use_train_pseudo = false;
    } else if (name == "flykd-fixed") {
      s.random_graph.regenerate_every = 0;
    } else if (name == "flykd-occasional") {
      s.random_graph.regenerate_every = d.occasional_every;
    } else if (name == "flykd-strong") {
      s.random_graph.strong_score_threshold = d.strong_threshold;
    } else if (name == "flykd-modprob") {
      s.random_graph.power = d.mod_power;
    } else if (name != "flykd") {
      throw Error("unknown method preset '" + name + "'");
    }
  } else {
    throw Error("unknown method preset '" + name + "'");
  }
  return s;
}

std::vector<std::pair<std::string, std::string>> DescribeMethod(
    const MethodSpec& s) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("method.kind", MethodName(s.method));
  if (s.method == Method::kBaseline) return out;
  out.emplace_back("curriculum.policy", PolicyName(s.curriculum.policy));
  out.emplace_back("curriculum.keyframes", FormatKeyframes(s.curriculum.keyframes));
  out.emplace_back("curriculum.og_floor", FormatDouble(s.curriculum.og_floor));
  out.emplace_back("method.use_train_pseudo", s.use_train_pseudo ? "true" : "false");
  if (s.method == Method::kLsp) {
    out.emplace_back("lsp.layers", std::to_string(s.lsp_layers));
    out.emplace_back("lsp.sigma", FormatDouble(s.lsp_kernel_sigma));
    return out;
  }
  out.emplace_back("method.distill_all_relations",
                   s.distill_all_relations ? "true" : "false");
  if (s.method == Method::kFlykd) {
    const auto& g = s.random_graph;
    out.emplace_back("random_graph.k", std::to_string(g.k));
    out.emplace_back("random_graph.power", FormatDouble(g.power));
    out.emplace_back("random_graph.regenerate_every",
                     std::to_string(g.regenerate_every));
    out.emplace_back("random_graph.strong_score_threshold",
                     g.strong_score_threshold
                         ? FormatDouble(*g.strong_score_threshold)
                         : std::string("none"));
    out.emplace_back("random_graph.two_sided_threshold",
                     g.two_sided_threshold ? "true" : "false");
  }
  return out;
}

}  // namespace kgdistill
