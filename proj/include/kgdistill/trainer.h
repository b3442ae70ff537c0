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

#ifndef KGDISTILL_TRAINER_H_
#define KGDISTILL_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kgdistill/dataset.h"
#include "kgdistill/model.h"
#include "kgdistill/random_graph.h"
#include "kgdistill/schedule.h"

namespace kgdistill {

enum class Method { kBaseline, kBkd, kLsp, kFlykd };

const char* MethodName(Method method);
Method ParseMethod(const std::string& name);

struct MethodSpec {
  Method method = Method::kBaseline;
  // Loss weights per epoch. The trainer resets total_epochs to the number of
  // finetuning epochs. Baseline ignores it; BKD and LSP ignore the
  // random-graph weight; LSP uses the train-pseudo weight for its
  // structure loss.
  ScheduleSpec curriculum = ScheduleSpec::Constant({1.0, 0.0, 0.0}, 1);
  RandomGraphSpec random_graph;
  int lsp_layers = 1;
  double lsp_kernel_sigma = 1.0;
  // Off zeroes the train-graph pseudo-label weight for the whole run.
  bool use_train_pseudo = true;
  // Train-graph pseudo labels over every relation instead of the targets.
  bool distill_all_relations = false;

  void Validate(const TrainConfig& config) const;
};

// Effective loss weights of `spec` at `epoch` after method-specific masking.
LossWeights MethodWeights(const MethodSpec& spec, int epoch);

struct EpochEvent {
  int epoch = 0;
  LossWeights weights;
  // Unweighted mean losses. Terms a method does not use are 0.
  double loss_original = 0.0;
  double loss_train_pseudo = 0.0;
  double loss_random_pseudo = 0.0;
  double loss_total = 0.0;
  double lr_multiplier = 1.0;
  double valid_auprc = 0.0;
  double seconds = 0.0;
  // Teacher labels held in memory during the epoch.
  int64_t live_pseudo_labels = 0;
};

struct TrainResult {
  // Parameters at the epoch with the best validation macro AUPRC.
  ModelParams params;
  double best_valid_auprc = 0.0;
  // -1 when no finetuning epoch beat the starting point.
  int best_epoch = -1;
  double initial_valid_auprc = 0.0;
  std::vector<EpochEvent> events;
  int64_t train_pseudo_labels = 0;
  int64_t random_label_high_water = 0;
  int64_t random_labels_cumulative = 0;
  double wall_seconds = 0.0;

  double MeanEpochSeconds() const;
};

struct TrainOptions {
  // Skip initialization and pretraining and start finetuning from these.
  std::optional<ModelParams> initial_params;
  // Tab-separated per-epoch log; empty disables it.
  std::string event_log_path;
  std::function<void(const EpochEvent&)> on_epoch;
};

// No distillation: pretraining on all relations, then finetuning on the
// target relations with fresh 1:1 negatives every epoch.
TrainResult TrainBaseline(const Dataset& data, const TrainConfig& config,
                          int dim, const TrainOptions& options = {});

// Ground truth plus teacher labels on the training graph. The random-graph
// weight is forced to 0. A constant curriculum gives plain logit distillation.
TrainResult TrainBkd(const ModelParams& teacher, const Dataset& data,
                     const TrainConfig& config, const ScheduleSpec& curriculum,
                     const TrainOptions& options = {});

// Ground truth plus the local-structure loss on the last `lsp_layers`
// layers, weighted by `lsp_weight`.
TrainResult TrainLsp(const ModelParams& teacher, const Dataset& data,
                     const TrainConfig& config, int lsp_layers, double sigma,
                     double lsp_weight = 1.0,
                     const TrainOptions& options = {});

// Ground truth, teacher labels on the training graph, and teacher labels on
// a degree-aware random graph, weighted per epoch by the curriculum.
TrainResult TrainFlykd(const ModelParams& teacher, const Dataset& data,
                       const TrainConfig& config, const MethodSpec& spec,
                       const TrainOptions& options = {});

// Dispatches on `spec.method`. `teacher` may be null for the baseline. The
// student dimension is config.d_student unless `dim` is given.
TrainResult TrainStudent(const ModelParams* teacher, const Dataset& data,
                         const TrainConfig& config, const MethodSpec& spec,
                         const TrainOptions& options = {},
                         std::optional<int> dim = std::nullopt);

}  // namespace kgdistill

#endif  // KGDISTILL_TRAINER_H_
