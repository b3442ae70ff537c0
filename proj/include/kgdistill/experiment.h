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

#ifndef KGDISTILL_EXPERIMENT_H_
#define KGDISTILL_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kgdistill/model.h"
#include "kgdistill/report.h"
#include "kgdistill/schedule.h"
#include "kgdistill/split.h"
#include "kgdistill/synthetic.h"
#include "kgdistill/trainer.h"

namespace kgdistill {

// Knobs shared by the named method presets.
struct MethodDefaults {
  // Curriculum keyframes; empty selects ScheduleSpec::Default.
  std::vector<Keyframe> keyframes;
  double og_floor = 0.05;
  // Weights of the constant (no-curriculum) variants.
  LossWeights bkd_constant{0.05, 1.0, 0.0};
  LossWeights flykd_constant{0.05, 1.0, 1.0};
  int k = 1000;
  int occasional_every = 5;
  double strong_threshold = 2.0;
  bool two_sided_threshold = false;
  double mod_power = 1.5;
  double lsp_sigma = 1.0;
  double lsp_weight = 1.0;
  bool distill_all_relations = false;
};

struct MethodPresetInfo {
  const char* name;
  const char* description;
};

// Every preset accepted by MethodPreset, in a fixed order.
const std::vector<MethodPresetInfo>& MethodPresets();

// Resolves a preset name ("baseline", "bkd", "flykd", ...) into a spec whose
// curriculum spans `total_epochs`.
MethodSpec MethodPreset(const std::string& name, const MethodDefaults& defaults,
                        int total_epochs);

// Flat key/value description of a method spec, embedded in run reports.
std::vector<std::pair<std::string, std::string>> DescribeMethod(
    const MethodSpec& spec);

struct ExperimentPlan {
  // Edge-list file; empty generates `synthetic` instead.
  std::string edge_list;
  SyntheticSpec synthetic;
  // Target relations and fractions; the seed is replaced per run. Empty
  // targets select every relation.
  SplitSpec split;
  std::vector<int64_t> seeds{45, 46, 47, 48, 49};
  // Preset names. A baseline cell runs for every seed whether listed or not.
  std::vector<std::string> methods{"baseline", "bkd", "flykd"};
  MethodDefaults method_defaults;
  TrainConfig config;
  std::string output_dir;
  int jobs = 1;
  // Skip cells whose checkpoint and result record already exist.
  bool resume = false;
  // Also report the teacher as its own row.
  bool report_teacher = true;

  void Validate() const;
  // The methods actually run, baseline first.
  std::vector<std::string> ResolvedMethods() const;
  // Every setting that influences results, in a fixed order.
  std::vector<std::pair<std::string, std::string>> Describe() const;
};

// Graph named by the plan: loaded from the edge list or generated.
HeteroGraph LoadPlanGraph(const ExperimentPlan& plan);

struct RunOutcome {
  std::vector<RunReport> reports;
  ReportFiles files;
  int cells = 0;
  int failed = 0;
  int skipped = 0;
};

// Writes "{method}-{seed}.ckpt", "{method}-{seed}.json" and an event log per
// cell, the teacher as "teacher-{seed}", then the aggregated report. Cells
// of one seed share the split and teacher; seeds run in parallel up to
// `plan.jobs`. A failing cell is recorded and does not stop the others.
// One line per finished cell goes to `progress` when it is non-null.
RunOutcome RunPlan(const ExperimentPlan& plan,
                   std::ostream* progress = nullptr);

// Validates the plan and the graph and prints each method's schedule to
// `out`. Writes no files.
void DryRun(const ExperimentPlan& plan, std::ostream& out);

// Reads every "*.json" cell record under `dir` and re-emits the report.
RunOutcome ReaggregateReports(const std::string& dir,
                              const std::string& baseline_method = "baseline");

}  // namespace kgdistill

#endif  // KGDISTILL_EXPERIMENT_H_
