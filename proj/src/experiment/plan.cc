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
#include <set>

#include "kgdistill/checkpoint.h"
#include "kgdistill/error.h"
#include "kgdistill/experiment.h"

namespace kgdistill {

void ExperimentPlan::Validate() const {
  if (seeds.empty()) throw Error("plan: no seeds");
  if (std::set<int64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw Error("plan: seeds must be distinct");
  }
  if (output_dir.empty()) throw Error("plan: no output directory");
  if (jobs < 1) throw Error("plan: jobs must be >= 1");
  config.Validate();
  if (edge_list.empty()) synthetic.Validate();
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (m == "teacher") throw Error("plan: 'teacher' is not a method preset");
    if (!seen.insert(m).second) throw Error("plan: method '" + m + "' repeated");
    MethodPreset(m, method_defaults, config.finetune_epochs).Validate(config);
  }
}

std::vector<std::string> ExperimentPlan::ResolvedMethods() const {
  std::vector<std::string> out{"baseline"};
  for (const auto& m : methods) {
    if (m != "baseline") out.push_back(m);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ExperimentPlan::Describe()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const std::string& k, const std::string& v) {
    out.emplace_back(k, v);
  };
  auto num = [](double v) { return FormatDouble(v); };
  if (!edge_list.empty()) {
    add("data.edge_list", edge_list);
  } else {
    add("data.synthetic.n_types", std::to_string(synthetic.n_types));
    add("data.synthetic.n_relations", std::to_string(synthetic.n_relations));
    add("data.synthetic.nodes_per_type", std::to_string(synthetic.nodes_per_type));
    add("data.synthetic.latent_dim", std::to_string(synthetic.latent_dim));
    add("data.synthetic.density", num(synthetic.density));
    add("data.synthetic.seed", std::to_string(synthetic.seed));
    add("data.synthetic.sharpness", num(synthetic.sharpness));
    add("data.synthetic.norm_log_sigma", num(synthetic.norm_log_sigma));
  }
  std::string targets;
  for (const auto& t : split.target_relations) {
    targets += (targets.empty() ? "" : ",") + t;
  }
  add("split.mode", SplitModeName(split.mode));
  add("split.fractions", num(split.train_fraction) + "," +
                             num(split.valid_fraction) + "," +
                             num(split.test_fraction));
  add("split.target_relations", targets.empty() ? "all" : targets);
  add("train.d_teacher", std::to_string(config.d_teacher));
  add("train.d_student", std::to_string(config.d_student));
  add("train.n_layers", std::to_string(config.n_layers));
  add("train.pretrain_epochs", std::to_string(config.pretrain_epochs));
  add("train.pretrain_lr", num(config.pretrain_lr));
  add("train.finetune_epochs", std::to_string(config.finetune_epochs));
  add("train.finetune_lr", num(config.finetune_lr));
  add("train.plateau_factor", num(config.plateau_factor));
  add("train.plateau_window", std::to_string(config.plateau_window));
  add("train.plateau_patience", std::to_string(config.plateau_patience));
  add("train.min_lr", num(config.min_lr));
  return out;
}

HeteroGraph LoadPlanGraph(const ExperimentPlan& plan) {
  if (!plan.edge_list.empty()) return LoadGraph(plan.edge_list).graph;
  return GenerateSyntheticKg(plan.synthetic).graph;
}

}  // namespace kgdistill
