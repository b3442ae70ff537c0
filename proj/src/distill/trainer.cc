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

#include "kgdistill/trainer.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>

#include "kgdistill/adam.h"
#include "kgdistill/error.h"
#include "kgdistill/lsp.h"
#include "kgdistill/negative_sampling.h"
#include "kgdistill/objective.h"
#include "kgdistill/plateau.h"
#include "kgdistill/pseudo_labels.h"

namespace kgdistill {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Positives of `relations` in the training graph.
LabeledEdgeSet TrainPositives(const HeteroGraph& train,
                              const std::vector<int32_t>& relations) {
  std::vector<Triple> out;
  for (const int32_t r : relations) {
    for (const Edge& e : train.edges(r)) out.push_back({r, e.src, e.dst});
  }
  return LabeledEdgeSet::GroundTruth(std::move(out));
}

std::vector<int32_t> AllRelations(const HeteroGraph& g) {
  std::vector<int32_t> out(g.num_relations());
  for (int32_t r = 0; r < g.num_relations(); ++r) out[r] = r;
  return out;
}

// Positives followed by freshly sampled negatives, targets 1 then 0.
struct ObservedBatch {
  std::vector<Triple> edges;
  std::vector<double> targets;
};

ObservedBatch WithNegatives(const HeteroGraph& train,
                            const LabeledEdgeSet& positives, Rng& rng) {
  const auto neg = SampleNegatives(train, positives, rng).negatives;
  ObservedBatch b;
  b.edges.assign(positives.edges().begin(), positives.edges().end());
  b.edges.insert(b.edges.end(), neg.edges().begin(), neg.edges().end());
  b.targets.assign(positives.size(), 1.0);
  b.targets.resize(b.edges.size(), 0.0);
  return b;
}

double Validate(const ModelParams& params, const GraphEncoder& encoder,
                const Dataset& data, int epoch) {
  const auto cache = encoder.Forward(params);
  for (const Matrix& h : cache.output()) {
    if (!h.allFinite()) throw DivergenceError("non-finite node embeddings", epoch);
  }
  return ScoreEvalSet(cache.output(), params, encoder.schema(), data.valid);
}

void Pretrain(ModelParams* params, const GraphEncoder& encoder,
              const HeteroGraph& train, const TrainConfig& config) {
  if (config.pretrain_epochs == 0) return;
  const auto positives = TrainPositives(train, AllRelations(train));
  if (positives.empty()) return;
  Rng rng = MakeRng(config.seed, "pretrain-negatives");
  AdamState adam = AdamState::ZerosLike(*params);
  for (int e = 0; e < config.pretrain_epochs; ++e) {
    const ObservedBatch batch = WithNegatives(train, positives, rng);
    const LossTerm term{batch.edges, batch.targets, 1.0};
    const auto res = ComputeObjective(*params, encoder, {&term, 1});
    if (!std::isfinite(res.total)) {
      throw DivergenceError("non-finite pretraining loss", e);
    }
    AdamStepInPlace(params, res.grads, &adam, config.pretrain_lr);
  }
}

void WriteEventHeader(std::ofstream& out) {
  out << "epoch\tlambda_og\tlambda_pe\tlambda_pr\tloss_og\tloss_pe\tloss_pr\t"
         "loss_total\tlr_multiplier\tvalid_auprc\tseconds\tlive_pseudo_labels\n";
}

void WriteEvent(std::ofstream& out, const EpochEvent& e) {
  out.precision(17);
  out << e.epoch << '\t' << e.weights.original << '\t' << e.weights.train_pseudo
      << '\t' << e.weights.random_pseudo << '\t' << e.loss_original << '\t'
      << e.loss_train_pseudo << '\t' << e.loss_random_pseudo << '\t'
      << e.loss_total << '\t' << e.lr_multiplier << '\t' << e.valid_auprc
      << '\t' << e.seconds << '\t' << e.live_pseudo_labels << '\n';
}

// Local-structure distillation state: teacher hidden states and the
// neighborhoods of the training graph.
struct LspState {
  Neighborhoods neighborhoods;
  std::vector<int> layers;  // distilled layer indices into ForwardCache::hidden
  double sigma;
};

}  // namespace

const char* MethodName(Method method) {
  switch (method) {
    case Method::kBaseline:
      return "baseline";
    case Method::kBkd:
      return "bkd";
    case Method::kLsp:
      return "lsp";
    case Method::kFlykd:
      return "flykd";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  if (name == "baseline") return Method::kBaseline;
  if (name == "bkd") return Method::kBkd;
  if (name == "lsp") return Method::kLsp;
  if (name == "flykd") return Method::kFlykd;
  throw Error("unknown method '" + name + "'");
}

void MethodSpec::Validate(const TrainConfig& config) const {
  if (method != Method::kBaseline) curriculum.Validate();
  if (method == Method::kFlykd) random_graph.Validate();
  if (method == Method::kLsp) {
    if (lsp_layers != 1 && lsp_layers != 2) {
      throw Error("lsp_layers must be 1 or 2");
    }
    if (lsp_layers > config.n_layers) {
      throw Error("lsp_layers exceeds the number of encoder layers");
    }
    if (!(lsp_kernel_sigma > 0)) throw Error("lsp kernel sigma must be positive");
  }
}

LossWeights MethodWeights(const MethodSpec& spec, int epoch) {
  if (spec.method == Method::kBaseline) return {1.0, 0.0, 0.0};
  LossWeights w = WeightsAt(spec.curriculum, epoch);
  if (spec.method != Method::kFlykd) w.random_pseudo = 0.0;
  if (!spec.use_train_pseudo) w.train_pseudo = 0.0;
  return w;
}

double TrainResult::MeanEpochSeconds() const {
  if (events.empty()) return 0.0;
  double s = 0.0;
  for (const auto& e : events) s += e.seconds;
  return s / static_cast<double>(events.size());
}

TrainResult TrainStudent(const ModelParams* teacher, const Dataset& data,
                         const TrainConfig& config, const MethodSpec& method_in,
                         const TrainOptions& options, std::optional<int> dim) {
  const auto start = Clock::now();
  config.Validate();
  MethodSpec method = method_in;
  method.curriculum.total_epochs = std::max(1, config.finetune_epochs);
  if (method.random_graph.relations.empty()) {
    method.random_graph.relations = data.targets();
  }
  method.Validate(config);
  const bool needs_teacher = method.method != Method::kBaseline;
  if (needs_teacher && !teacher) throw Error("distillation needs a teacher");
  if (needs_teacher && teacher->num_layers() != config.n_layers) {
    throw Error("teacher and student layer counts differ");
  }

  const HeteroGraph& train = data.train();
  const Schema& schema = train.schema();
  const GraphEncoder encoder(train);

  ModelParams params;
  if (options.initial_params) {
    params = *options.initial_params;
    encoder.CheckShapes(params);
  } else {
    Rng init_rng = MakeRng(config.seed, "init");
    params = InitParams(schema, dim.value_or(config.d_student), config.n_layers,
                        init_rng);
    Pretrain(&params, encoder, train, config);
  }

  const LabeledEdgeSet positives = TrainPositives(train, data.targets());
  if (positives.empty()) throw Error("no training edges in the target relations");

  std::unique_ptr<FrozenTeacher> frozen;
  if (needs_teacher) {
    encoder.CheckShapes(*teacher);
    frozen = std::make_unique<FrozenTeacher>(*teacher, train);
  }

  // Teacher labels on the training graph: positives plus one fixed set of
  // negatives.
  LabeledEdgeSet train_pseudo;
  if (method.method == Method::kBkd || method.method == Method::kFlykd) {
    const LabeledEdgeSet base =
        method.distill_all_relations
            ? TrainPositives(train, AllRelations(train))
            : positives;
    Rng rng = MakeRng(config.seed, "pseudo-negatives");
    const ObservedBatch b = WithNegatives(train, base, rng);
    train_pseudo = TeacherPseudoLabels(*frozen, b.edges);
  }

  std::unique_ptr<LspState> lsp;
  std::vector<const LayerStates*> lsp_teacher;
  if (method.method == Method::kLsp) {
    lsp = std::make_unique<LspState>(
        LspState{Neighborhoods(train), {}, method.lsp_kernel_sigma});
    for (int i = method.lsp_layers - 1; i >= 0; --i) {
      lsp->layers.push_back(config.n_layers - i);
    }
    for (const int l : lsp->layers) lsp_teacher.push_back(&frozen->hidden()[l]);
  }

  RandomLabelCache random_cache(config.seed);
  Rng negative_rng = MakeRng(config.seed, "finetune-negatives");
  PlateauSchedule plateau(PlateauOptions::FromConfig(config));
  AdamState adam = AdamState::ZerosLike(params);

  TrainResult result;
  result.train_pseudo_labels = static_cast<int64_t>(train_pseudo.size());
  result.initial_valid_auprc = Validate(params, encoder, data, -1);
  result.best_valid_auprc = result.initial_valid_auprc;
  result.params = params;

  std::ofstream log;
  if (!options.event_log_path.empty()) {
    log.open(options.event_log_path);
    if (!log) throw Error("cannot write '" + options.event_log_path + "'");
    WriteEventHeader(log);
  }

  for (int epoch = 0; epoch < config.finetune_epochs; ++epoch) {
    const auto epoch_start = Clock::now();
    EpochEvent ev;
    ev.epoch = epoch;
    ev.weights = MethodWeights(method, epoch);

    const ObservedBatch observed = WithNegatives(train, positives, negative_rng);
    std::vector<LossTerm> terms;
    terms.push_back({observed.edges, observed.targets, ev.weights.original});
    if (!train_pseudo.empty()) {
      terms.push_back(
          {train_pseudo.edges(), train_pseudo.targets(), ev.weights.train_pseudo});
    }
    const LabeledEdgeSet* random_labels = nullptr;
    if (method.method == Method::kFlykd) {
      random_labels = &EpochRandomLabels(*frozen, train, method.random_graph,
                                         epoch, &random_cache);
      terms.push_back({random_labels->edges(), random_labels->targets(),
                       ev.weights.random_pseudo});
    }
    std::vector<HiddenLossTerm> hidden_terms;
    if (lsp) {
      hidden_terms.push_back(
          {ev.weights.train_pseudo,
           [&](const ForwardCache& cache, double weight,
               std::vector<LayerStates>* grads) {
             std::vector<const LayerStates*> student;
             std::vector<LayerStates*> student_grads;
             for (const int l : lsp->layers) {
               student.push_back(&cache.hidden[l]);
               if (grads) {
                 auto& g = (*grads)[l];
                 if (g.empty()) {
                   for (const auto& h : cache.hidden[l]) {
                     g.push_back(Matrix::Zero(h.rows(), h.cols()));
                   }
                 }
                 student_grads.push_back(&g);
               }
             }
             return LocalStructureLoss(lsp_teacher, student, lsp->neighborhoods,
                                       lsp->sigma, weight, student_grads);
           }});
    }

    const ObjectiveResult obj =
        ComputeObjective(params, encoder, terms, hidden_terms);
    if (!std::isfinite(obj.total)) {
      throw DivergenceError("non-finite training loss", epoch);
    }
    ev.loss_original = obj.term_losses[0];
    size_t next = 1;
    if (!train_pseudo.empty()) ev.loss_train_pseudo = obj.term_losses[next++];
    if (random_labels) ev.loss_random_pseudo = obj.term_losses[next++];
    if (lsp) ev.loss_train_pseudo = obj.term_losses[next++];
    ev.loss_total = obj.total;
    ev.live_pseudo_labels = static_cast<int64_t>(train_pseudo.size()) +
                            (random_labels ? random_cache.live() : 0);

    ev.lr_multiplier = plateau.multiplier();
    AdamStepInPlace(&params, obj.grads, &adam,
                    config.finetune_lr * ev.lr_multiplier);
    if (!params.AllFinite()) {
      throw DivergenceError("non-finite parameters after update", epoch);
    }

    ev.valid_auprc = Validate(params, encoder, data, epoch);
    plateau.Update(epoch, ev.valid_auprc);
    if (ev.valid_auprc > result.best_valid_auprc) {
      result.best_valid_auprc = ev.valid_auprc;
      result.best_epoch = epoch;
      result.params = params;
    }
    ev.seconds = SecondsSince(epoch_start);
    if (log.is_open()) WriteEvent(log, ev);
    if (options.on_epoch) options.on_epoch(ev);
    result.events.push_back(ev);
  }
  result.random_label_high_water = random_cache.high_water();
  result.random_labels_cumulative = random_cache.cumulative();
  result.wall_seconds = SecondsSince(start);
  return result;
}

TrainResult TrainBaseline(const Dataset& data, const TrainConfig& config,
                          int dim, const TrainOptions& options) {
  MethodSpec spec;
  spec.method = Method::kBaseline;
  return TrainStudent(nullptr, data, config, spec, options, dim);
}

TrainResult TrainBkd(const ModelParams& teacher, const Dataset& data,
                     const TrainConfig& config, const ScheduleSpec& curriculum,
                     const TrainOptions& options) {
  MethodSpec spec;
  spec.method = Method::kBkd;
  spec.curriculum = curriculum;
  return TrainStudent(&teacher, data, config, spec, options);
}

TrainResult TrainLsp(const ModelParams& teacher, const Dataset& data,
                     const TrainConfig& config, int lsp_layers, double sigma,
                     double lsp_weight, const TrainOptions& options) {
  MethodSpec spec;
  spec.method = Method::kLsp;
  spec.curriculum = ScheduleSpec::Constant({1.0, lsp_weight, 0.0}, 1);
  spec.lsp_layers = lsp_layers;
  spec.lsp_kernel_sigma = sigma;
  return TrainStudent(&teacher, data, config, spec, options);
}

TrainResult TrainFlykd(const ModelParams& teacher, const Dataset& data,
                       const TrainConfig& config, const MethodSpec& spec,
                       const TrainOptions& options) {
  if (spec.method != Method::kFlykd) throw Error("TrainFlykd needs a flykd spec");
  return TrainStudent(&teacher, data, config, spec, options);
}

}  // namespace kgdistill
