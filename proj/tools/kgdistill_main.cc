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

// kgdistill: data generation, experiment runs and report aggregation.
//
//   kgdistill gen-data --out kg.tsv --data-seed 7
//   kgdistill run --methods baseline,bkd,flykd --seeds 45,46 --out runs/a
//   kgdistill run --config runs/a/config.ini --resume
//   kgdistill report --dir runs/a
//   kgdistill inspect-schedule --epochs 20

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgdistill/checkpoint.h"
#include "kgdistill/error.h"
#include "kgdistill/experiment.h"
#include "kgdistill/graph.h"
#include "kgdistill/schedule.h"
#include "kgdistill/synthetic.h"

namespace {

using kgdistill::Error;

enum ExitCode { kOk = 0, kUsage = 1, kPartial = 2, kTotal = 3 };

// Raised for invalid user input detected after parsing.
struct UsageError : Error {
  using Error::Error;
};

kgdistill::LossWeights ParseWeights(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      v.push_back(kgdistill::ParseDouble(part));
    } catch (const Error&) {
      throw UsageError("bad weight triple '" + text + "'");
    }
  }
  if (v.size() != 3) throw UsageError("weight triple needs 3 values: " + text);
  return {v[0], v[1], v[2]};
}

void AddSyntheticOptions(CLI::App* app, kgdistill::SyntheticSpec* s) {
  app->add_option("--types", s->n_types, "node types")->capture_default_str();
  app->add_option("--relations", s->n_relations, "relations")
      ->capture_default_str();
  app->add_option("--nodes-per-type", s->nodes_per_type, "nodes per type")
      ->capture_default_str();
  app->add_option("--latent-dim", s->latent_dim, "latent factor size")
      ->capture_default_str();
  app->add_option("--density", s->density, "expected edge fraction")
      ->capture_default_str();
  app->add_option("--data-seed", s->seed, "generator seed")->capture_default_str();
  app->add_option("--sharpness", s->sharpness, "latent score scale")
      ->capture_default_str();
  app->add_option("--norm-log-sigma", s->norm_log_sigma,
                  "spread of node latent norms")
      ->capture_default_str();
}

int GenData(const std::string& out, const kgdistill::SyntheticSpec& spec) {
  try {
    spec.Validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto kg = kgdistill::GenerateSyntheticKg(spec);
  kgdistill::WriteGraph(kg.graph, out);

  nlohmann::ordered_json m;
  m["edge_list"] = std::filesystem::path(out).filename().string();
  m["n_types"] = spec.n_types;
  m["n_relations"] = spec.n_relations;
  m["nodes_per_type"] = spec.nodes_per_type;
  m["latent_dim"] = spec.latent_dim;
  m["density"] = spec.density;
  m["seed"] = spec.seed;
  m["sharpness"] = spec.sharpness;
  m["norm_log_sigma"] = spec.norm_log_sigma;
  auto& rels = m["relations"] = nlohmann::ordered_json::array();
  for (int32_t r = 0; r < kg.graph.num_relations(); ++r) {
    const auto& info = kg.graph.relation(r);
    rels.push_back({{"name", info.name},
                    {"src_type", kg.graph.schema().node_types[info.src_type].name},
                    {"dst_type", kg.graph.schema().node_types[info.dst_type].name},
                    {"edges", kg.graph.edges(r).size()},
                    {"expected_edges", kg.expected_edges[r]}});
  }
  std::ofstream mf(out + ".manifest.json");
  if (!mf) throw Error("cannot write manifest next to '" + out + "'");
  mf << m.dump(2) << '\n';
  std::cout << "wrote " << kg.graph.num_edges() << " edges to " << out << '\n';
  return kOk;
}

int InspectSchedule(int epochs, const std::string& method,
                    kgdistill::MethodDefaults defaults, int every) {
  if (epochs < 1 || every < 1) throw UsageError("epochs and stride must be >= 1");
  const auto spec = kgdistill::MethodPreset(method, defaults, epochs);
  spec.curriculum.Validate();
  std::cout << "# policy " << kgdistill::PolicyName(spec.curriculum.policy)
            << " keyframes " << kgdistill::FormatKeyframes(spec.curriculum.keyframes)
            << '\n';
  std::cout << "epoch\tlambda_og\tlambda_pe\tlambda_pr\n";
  for (int e = 0; e <= epochs; e += every) {
    const auto w = kgdistill::MethodWeights(spec, e);
    std::cout << e << '\t' << kgdistill::FormatDouble(w.original) << '\t'
              << kgdistill::FormatDouble(w.train_pseudo) << '\t'
              << kgdistill::FormatDouble(w.random_pseudo) << '\n';
  }
  return kOk;
}

struct MethodFlags {
  std::string keyframes;
  std::string bkd_constant = "0.05,1,0";
  std::string flykd_constant = "0.05,1,1";
};

void AddMethodOptions(CLI::App* app, kgdistill::MethodDefaults* d,
                      MethodFlags* f) {
  app->add_option("--keyframes", f->keyframes,
                  "curriculum keyframes 'fraction:og,pe,pr;...'");
  app->add_option("--og-floor", d->og_floor, "lower bound on the ground-truth weight")
      ->capture_default_str();
  app->add_option("--bkd-constant", f->bkd_constant, "weights of plain bkd")
      ->capture_default_str();
  app->add_option("--flykd-constant", f->flykd_constant,
                  "weights of flykd without curriculum")
      ->capture_default_str();
  app->add_option("--k", d->k, "random-graph labels per relation")
      ->capture_default_str();
  app->add_option("--occasional-every", d->occasional_every,
                  "redraw period of flykd-occasional")
      ->capture_default_str();
  app->add_option("--strong-threshold", d->strong_threshold,
                  "logit cutoff of flykd-strong")
      ->capture_default_str();
  app->add_flag("--two-sided-threshold", d->two_sided_threshold,
                "flykd-strong compares |logit|");
  app->add_option("--mod-power", d->mod_power, "degree exponent of flykd-modprob")
      ->capture_default_str();
  app->add_option("--lsp-sigma", d->lsp_sigma, "kernel width of lsp1/lsp2")
      ->capture_default_str();
  app->add_option("--lsp-weight", d->lsp_weight, "weight of the lsp loss")
      ->capture_default_str();
  app->add_flag("--distill-all-relations", d->distill_all_relations,
                "training-graph teacher labels over every relation");
}

void ApplyMethodFlags(const MethodFlags& f, kgdistill::MethodDefaults* d) {
  try {
    if (!f.keyframes.empty()) d->keyframes = kgdistill::ParseKeyframes(f.keyframes);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  d->bkd_constant = ParseWeights(f.bkd_constant);
  d->flykd_constant = ParseWeights(f.flykd_constant);
}

int Run(CLI::App* run, kgdistill::ExperimentPlan plan, bool dry_run,
        const std::string& split_mode, std::vector<double> fractions) {
  // An empty list round-trips through config.ini as a single "".
  std::erase(plan.split.target_relations, std::string());
  try {
    plan.split.mode = kgdistill::ParseSplitMode(split_mode);
    if (fractions.size() != 3) throw Error("--fractions needs 3 values");
    plan.split.train_fraction = fractions[0];
    plan.split.valid_fraction = fractions[1];
    plan.split.test_fraction = fractions[2];
    plan.Validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (dry_run) {
    kgdistill::DryRun(plan, std::cout);
    return kOk;
  }
  std::filesystem::create_directories(plan.output_dir);
  {
    std::ofstream cfg(std::filesystem::path(plan.output_dir) / "config.ini");
    cfg << "[run]\n"
        << run->config_to_str(/*default_also=*/true, /*write_description=*/false);
  }
  const auto outcome = kgdistill::RunPlan(plan, &std::cerr);
  std::cout << "cells " << outcome.cells << ", failed " << outcome.failed
            << ", resumed " << outcome.skipped << '\n'
            << "summary " << outcome.files.summary_table << '\n';
  if (outcome.failed == 0) return kOk;
  return outcome.failed == outcome.cells ? kTotal : kPartial;
}

}  // namespace

// Config files are read by the top-level app, so `run --config f` is
// rewritten to `--config f run`.
std::vector<std::string> HoistConfig(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] != "run") return args;
  std::vector<std::string> hoisted;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      hoisted = {args[i], args[i + 1]};
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      hoisted = {args[i]};
      args.erase(args.begin() + i);
      break;
    }
  }
  args.insert(args.begin(), hoisted.begin(), hoisted.end());
  return args;
}

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-graph link prediction with teacher distillation", "kgdistill"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "write a synthetic edge list");
  kgdistill::SyntheticSpec gen_spec;
  gen_spec.seed = 1;
  std::string gen_out;
  gen->add_option("--out", gen_out, "edge-list path")->required();
  AddSyntheticOptions(gen, &gen_spec);

  // run
  auto* run = app.add_subcommand("run", "train teachers, baselines and students");
  app.set_config("--config", "", "INI file with option values for run");
  kgdistill::ExperimentPlan plan;
  plan.synthetic.seed = 1;
  const char* env_root = std::getenv("KGD_OUTPUT_ROOT");
  plan.output_dir = env_root ? env_root : "runs";
  bool dry_run = false;
  std::string split_mode = "edge-random";
  std::vector<double> fractions{0.8, 0.1, 0.1};
  MethodFlags run_flags;
  run->add_option("--data", plan.edge_list, "edge-list file (default: synthetic)");
  AddSyntheticOptions(run, &plan.synthetic);
  run->add_option("--targets", plan.split.target_relations,
                  "target relations (default: all)")
      ->delimiter(',');
  run->add_option("--split-mode", split_mode, "edge-random or node-holdout")
      ->capture_default_str();
  run->add_option("--fractions", fractions, "train,valid,test")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  run->add_option("--seeds", plan.seeds, "seeds")->delimiter(',')->capture_default_str();
  run->add_option("--methods", plan.methods, "method presets")
      ->delimiter(',')
      ->capture_default_str();
  auto& c = plan.config;
  run->add_option("--d-teacher", c.d_teacher, "teacher width")->capture_default_str();
  run->add_option("--d-student", c.d_student, "student width")->capture_default_str();
  run->add_option("--layers", c.n_layers, "message-passing layers")
      ->capture_default_str();
  run->add_option("--pretrain-epochs", c.pretrain_epochs, "pretraining epochs")
      ->capture_default_str();
  run->add_option("--pretrain-lr", c.pretrain_lr, "pretraining rate")
      ->capture_default_str();
  run->add_option("--epochs", c.finetune_epochs, "finetuning epochs")
      ->capture_default_str();
  run->add_option("--lr", c.finetune_lr, "finetuning rate")->capture_default_str();
  run->add_option("--plateau-factor", c.plateau_factor, "rate reduction factor")
      ->capture_default_str();
  run->add_option("--plateau-window", c.plateau_window,
                  "final epochs with plateau reduction")
      ->capture_default_str();
  run->add_option("--plateau-patience", c.plateau_patience,
                  "epochs without improvement per reduction")
      ->capture_default_str();
  run->add_option("--min-lr", c.min_lr, "rate floor")->capture_default_str();
  AddMethodOptions(run, &plan.method_defaults, &run_flags);
  run->add_option("--out", plan.output_dir,
                  "output directory (default: $KGD_OUTPUT_ROOT or ./runs)");
  run->add_option("--jobs", plan.jobs, "seeds trained in parallel")
      ->capture_default_str();
  run->add_flag("--resume", plan.resume, "skip completed cells");
  run->add_flag("--dry-run", dry_run, "validate and print schedules only");
  bool no_teacher_row = false;
  run->add_flag("--no-teacher-row", no_teacher_row,
                "leave the teacher out of the report");

  // report
  auto* report = app.add_subcommand("report", "re-aggregate finished cells");
  std::string report_dir = env_root ? env_root : "runs";
  std::string baseline = "baseline";
  report->add_option("--dir", report_dir, "run directory");
  report->add_option("--baseline", baseline, "reference method")
      ->capture_default_str();

  // inspect-schedule
  auto* inspect = app.add_subcommand("inspect-schedule",
                                     "print loss weights per epoch");
  int inspect_epochs = 2000;
  int inspect_every = 1;
  std::string inspect_method = "flykd";
  kgdistill::MethodDefaults inspect_defaults;
  MethodFlags inspect_flags;
  inspect->add_option("--epochs", inspect_epochs, "total epochs")
      ->capture_default_str();
  inspect->add_option("--every", inspect_every, "epoch stride")
      ->capture_default_str();
  inspect->add_option("--method", inspect_method, "method preset")
      ->capture_default_str();
  AddMethodOptions(inspect, &inspect_defaults, &inspect_flags);

  try {
    std::vector<std::string> args = HoistConfig(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen->parsed()) return GenData(gen_out, gen_spec);
    if (run->parsed()) {
      ApplyMethodFlags(run_flags, &plan.method_defaults);
      plan.report_teacher = !no_teacher_row;
      return Run(run, plan, dry_run, split_mode, fractions);
    }
    if (report->parsed()) {
      const auto outcome = kgdistill::ReaggregateReports(report_dir, baseline);
      std::cout << "records " << outcome.cells << ", failed " << outcome.failed
                << '\n'
                << "summary " << outcome.files.summary_table << '\n';
      return kOk;
    }
    if (inspect->parsed()) {
      ApplyMethodFlags(inspect_flags, &inspect_defaults);
      return InspectSchedule(inspect_epochs, inspect_method, inspect_defaults,
                             inspect_every);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTotal;
  }
  return kUsage;
}
