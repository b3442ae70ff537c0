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
#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <regex>
#include <thread>
#include <tuple>

#include "kgdistill/checkpoint.h"
#include "kgdistill/encoder.h"
#include "kgdistill/error.h"
#include "kgdistill/experiment.h"

namespace kgdistill {
namespace {

namespace fs = std::filesystem;

constexpr char kTeacher[] = "teacher";

std::string CellStem(const std::string& method, int64_t seed) {
  return method + "-" + std::to_string(seed);
}

void WriteText(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

nlohmann::ordered_json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

// A completed cell has a checkpoint and a successful result record.
std::optional<RunReport> CompletedCell(const fs::path& dir,
                                       const std::string& stem) {
  const fs::path ckpt = dir / (stem + ".ckpt");
  const fs::path json = dir / (stem + ".json");
  if (!fs::exists(ckpt) || !fs::exists(json)) return std::nullopt;
  try {
    RunReport r = RunReportFromJson(ReadJson(json));
    if (r.ok()) return r;
  } catch (const Error&) {
  }
  return std::nullopt;
}

class Progress {
 public:
  explicit Progress(std::ostream* out) : out_(out) {}
  void Line(const std::string& text) {
    if (!out_) return;
    std::lock_guard<std::mutex> lock(mu_);
    *out_ << text << '\n' << std::flush;
  }

 private:
  std::ostream* out_;
  std::mutex mu_;
};

// The plan's split with its seed and default targets filled in.
SplitSpec ResolveSplit(const ExperimentPlan& plan, const Schema& schema,
                       int64_t seed) {
  SplitSpec spec = plan.split;
  spec.seed = static_cast<uint64_t>(seed);
  if (spec.target_relations.empty()) {
    for (const auto& r : schema.relations) spec.target_relations.push_back(r.name);
  }
  spec.Validate(schema);
  return spec;
}

struct SeedOutcome {
  std::vector<RunReport> reports;
  int failed = 0;
  int skipped = 0;
};

class SeedRunner {
 public:
  SeedRunner(const ExperimentPlan& plan,
             std::shared_ptr<const HeteroGraph> graph, int64_t seed,
             Progress* progress)
      : plan_(plan),
        graph_(std::move(graph)),
        seed_(seed),
        dir_(plan.output_dir),
        progress_(progress) {
    config_ = plan.config;
    config_.seed = static_cast<uint64_t>(seed);
  }

  SeedOutcome Run() {
    SeedOutcome out;
    const auto methods = plan_.ResolvedMethods();
    const bool needs_teacher =
        plan_.report_teacher ||
        std::any_of(methods.begin(), methods.end(),
                    [](const std::string& m) { return m != "baseline"; });

    if (needs_teacher) {
      RunReport t = TeacherCell(&out);
      if (plan_.report_teacher) out.reports.push_back(std::move(t));
    }
    for (const auto& m : methods) {
      out.reports.push_back(MethodCell(m, &out));
    }
    return out;
  }

 private:
  const Dataset& Data() {
    if (!data_) {
      data_ = std::make_unique<Dataset>(Dataset::Build(
          graph_, ResolveSplit(plan_, graph_->schema(), seed_)));
    }
    return *data_;
  }

  std::map<std::string, std::string> BaseConfig(const std::string& method,
                                                int dim) const {
    std::map<std::string, std::string> cfg;
    for (const auto& [k, v] : plan_.Describe()) cfg[k] = v;
    cfg["method.name"] = method;
    cfg["seed"] = std::to_string(seed_);
    cfg["dim"] = std::to_string(dim);
    return cfg;
  }

  // Trains one model, evaluates it on the test set and writes its files.
  RunReport Train(const std::string& name, const MethodSpec& spec, int dim,
                  std::map<std::string, std::string> cfg,
                  ModelParams* trained) {
    const std::string stem = CellStem(name, seed_);
    RunReport report;
    report.method = name;
    report.seed = seed_;
    report.event_log = stem + ".events.tsv";
    report.config = cfg;
    const Dataset& data = Data();
    TrainOptions opts;
    opts.event_log_path = (dir_ / report.event_log).string();
    const TrainResult tr = TrainStudent(teacher_ ? &*teacher_ : nullptr, data,
                                        config_, spec, opts, dim);

    const GraphEncoder encoder(data.train());
    const auto cache = encoder.Forward(tr.params);
    std::vector<double> per;
    report.test_macro_auprc = ScoreEvalSet(cache.output(), tr.params,
                                           encoder.schema(), data.test, &per);
    for (size_t i = 0; i < per.size(); ++i) {
      report.test_per_relation.emplace_back(
          graph_->schema().relations[data.test.relations[i]].name, per[i]);
    }
    report.best_valid_auprc = tr.best_valid_auprc;
    report.best_epoch = tr.best_epoch;
    report.wall_seconds = tr.wall_seconds;
    report.mean_epoch_seconds = tr.MeanEpochSeconds();
    report.Validate();

    SaveCheckpoint({std::move(cfg), graph_->schema(), tr.params},
                   (dir_ / (stem + ".ckpt")).string());
    WriteText(dir_ / (stem + ".json"), ToJson(report, true).dump(2) + "\n");
    if (trained) *trained = tr.params;
    progress_->Line("[seed " + std::to_string(seed_) + "] " + name +
                    ": valid " + FormatDouble(report.best_valid_auprc) +
                    " test " + FormatDouble(report.test_macro_auprc));
    return report;
  }

  RunReport Failed(const std::string& name, const std::string& what,
                   SeedOutcome* out) {
    const std::string stem = CellStem(name, seed_);
    RunReport r;
    r.method = name;
    r.seed = seed_;
    r.status = "failed";
    r.error = what;
    std::error_code ec;
    fs::remove(dir_ / (stem + ".ckpt"), ec);
    try {
      WriteText(dir_ / (stem + ".json"), ToJson(r, true).dump(2) + "\n");
    } catch (const std::exception&) {
    }
    ++out->failed;
    progress_->Line("[seed " + std::to_string(seed_) + "] " + name +
                    " failed: " + what);
    return r;
  }

  RunReport TeacherCell(SeedOutcome* out) {
    const std::string stem = CellStem(kTeacher, seed_);
    if (plan_.resume) {
      if (auto done = CompletedCell(dir_, stem)) {
        try {
          teacher_ = LoadCheckpoint((dir_ / (stem + ".ckpt")).string()).params;
          ++out->skipped;
          return *done;
        } catch (const Error&) {
        }
      }
    }
    try {
      MethodSpec spec;
      spec.method = Method::kBaseline;
      ModelParams params;
      RunReport r = Train(kTeacher, spec, config_.d_teacher,
                          BaseConfig(kTeacher, config_.d_teacher), &params);
      teacher_ = std::move(params);
      return r;
    } catch (const std::exception& e) {
      teacher_error_ = e.what();
      return Failed(kTeacher, e.what(), out);
    }
  }

  RunReport MethodCell(const std::string& name, SeedOutcome* out) {
    const std::string stem = CellStem(name, seed_);
    if (plan_.resume) {
      if (auto done = CompletedCell(dir_, stem)) {
        ++out->skipped;
        return *done;
      }
    }
    try {
      const MethodSpec spec =
          MethodPreset(name, plan_.method_defaults, config_.finetune_epochs);
      if (spec.method != Method::kBaseline && !teacher_) {
        throw Error("teacher unavailable: " + teacher_error_);
      }
      auto cfg = BaseConfig(name, config_.d_student);
      for (const auto& [k, v] : DescribeMethod(spec)) cfg[k] = v;
      return Train(name, spec, config_.d_student, std::move(cfg), nullptr);
    } catch (const std::exception& e) {
      return Failed(name, e.what(), out);
    }
  }

  const ExperimentPlan& plan_;
  std::shared_ptr<const HeteroGraph> graph_;
  int64_t seed_;
  fs::path dir_;
  Progress* progress_;
  TrainConfig config_;
  std::unique_ptr<Dataset> data_;
  std::optional<ModelParams> teacher_;
  std::string teacher_error_;
};

}  // namespace

RunOutcome RunPlan(const ExperimentPlan& plan, std::ostream* progress_out) {
  plan.Validate();
  fs::create_directories(plan.output_dir);
  const auto graph = std::make_shared<const HeteroGraph>(LoadPlanGraph(plan));
  ResolveSplit(plan, graph->schema(), plan.seeds.front());

  Progress progress(progress_out);
  std::vector<SeedOutcome> outcomes(plan.seeds.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < plan.seeds.size(); i = next++) {
      outcomes[i] = SeedRunner(plan, graph, plan.seeds[i], &progress).Run();
    }
  };
  const int n_threads =
      std::min<int>(plan.jobs, static_cast<int>(plan.seeds.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  RunOutcome result;
  for (auto& o : outcomes) {
    result.cells += static_cast<int>(o.reports.size());
    result.failed += o.failed;
    result.skipped += o.skipped;
    for (auto& r : o.reports) result.reports.push_back(std::move(r));
  }
  result.files = EmitReport(result.reports, plan.output_dir);
  return result;
}

void DryRun(const ExperimentPlan& plan, std::ostream& out) {
  plan.Validate();
  const HeteroGraph graph = LoadPlanGraph(plan);
  ResolveSplit(plan, graph.schema(), plan.seeds.front());
  out << "graph: " << graph.num_node_types() << " node types, "
      << graph.num_relations() << " relations, " << graph.num_edges()
      << " edges\n";
  out << "seeds:";
  for (const auto s : plan.seeds) out << ' ' << s;
  out << '\n';
  for (const auto& [k, v] : plan.Describe()) out << k << " = " << v << '\n';
  for (const auto& name : plan.ResolvedMethods()) {
    const MethodSpec spec =
        MethodPreset(name, plan.method_defaults, plan.config.finetune_epochs);
    out << "method " << name << ":";
    for (const auto& [k, v] : DescribeMethod(spec)) out << ' ' << k << '=' << v;
    out << '\n';
  }
}

RunOutcome ReaggregateReports(const std::string& dir,
                              const std::string& baseline_method) {
  static const std::regex kCell(R"((.+)-(-?[0-9]+)\.json)");
  std::vector<RunReport> reports;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    if (!entry.is_regular_file() || !std::regex_match(file, kCell)) continue;
    reports.push_back(RunReportFromJson(ReadJson(entry.path())));
  }
  auto rank = [&](const std::string& m) {
    return m == kTeacher ? 0 : m == baseline_method ? 1 : 2;
  };
  std::sort(reports.begin(), reports.end(),
            [&](const RunReport& a, const RunReport& b) {
              return std::tuple(rank(a.method), a.method, a.seed) <
                     std::tuple(rank(b.method), b.method, b.seed);
            });
  RunOutcome result;
  result.cells = static_cast<int>(reports.size());
  for (const auto& r : reports) result.failed += r.ok() ? 0 : 1;
  result.files = EmitReport(reports, dir, baseline_method);
  result.reports = std::move(reports);
  return result;
}

}  // namespace kgdistill
