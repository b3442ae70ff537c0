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

#include "kgdistill/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "kgdistill/error.h"
#include "kgdistill/metrics.h"

namespace kgdistill {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace

void RunReport::Validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!ok()) return;
  if (!in_unit(best_valid_auprc) || !in_unit(test_macro_auprc)) {
    throw Error("run report: AUPRC outside [0, 1]");
  }
  if (test_per_relation.empty()) return;
  double sum = 0.0;
  for (const auto& [name, v] : test_per_relation) {
    if (!in_unit(v)) throw Error("run report: AUPRC of " + name + " outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum / test_per_relation.size() - test_macro_auprc) > 1e-12) {
    throw Error("run report: per-relation AUPRC does not average to macro");
  }
}

nlohmann::ordered_json ToJson(const RunReport& r, bool with_timing) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["seed"] = r.seed;
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  j["best_valid_auprc"] = r.best_valid_auprc;
  j["best_epoch"] = r.best_epoch;
  j["test_macro_auprc"] = r.test_macro_auprc;
  auto& per = j["test_per_relation"] = nlohmann::ordered_json::object();
  for (const auto& [name, v] : r.test_per_relation) per[name] = v;
  if (with_timing) {
    j["wall_seconds"] = r.wall_seconds;
    j["mean_epoch_seconds"] = r.mean_epoch_seconds;
  }
  j["event_log"] = r.event_log;
  auto& cfg = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  return j;
}

RunReport RunReportFromJson(const nlohmann::ordered_json& j) {
  RunReport r;
  try {
    r.method = j.at("method").get<std::string>();
    r.seed = j.at("seed").get<int64_t>();
    r.status = j.at("status").get<std::string>();
    r.error = j.value("error", "");
    r.best_valid_auprc = j.at("best_valid_auprc").get<double>();
    r.best_epoch = j.at("best_epoch").get<int>();
    r.test_macro_auprc = j.at("test_macro_auprc").get<double>();
    for (const auto& [k, v] : j.at("test_per_relation").items()) {
      r.test_per_relation.emplace_back(k, v.get<double>());
    }
    r.wall_seconds = j.value("wall_seconds", 0.0);
    r.mean_epoch_seconds = j.value("mean_epoch_seconds", 0.0);
    r.event_log = j.value("event_log", "");
    if (j.contains("config")) {
      for (const auto& [k, v] : j.at("config").items()) {
        r.config[k] = v.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed run report: ") + e.what());
  }
  return r;
}

ReportFiles EmitReport(const std::vector<RunReport>& reports,
                       const std::string& out_dir,
                       const std::string& baseline_method) {
  if (reports.empty()) throw Error("no run reports to emit");
  std::filesystem::create_directories(out_dir);

  std::vector<std::string> methods;
  std::set<int64_t> seed_set;
  for (const auto& r : reports) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    seed_set.insert(r.seed);
  }
  const std::vector<int64_t> seeds(seed_set.begin(), seed_set.end());
  auto find = [&](const std::string& m, int64_t s) -> const RunReport* {
    for (const auto& r : reports) {
      if (r.method == m && r.seed == s) return &r;
    }
    return nullptr;
  };

  ReportFiles files;
  files.summary_table = out_dir + "/summary.tsv";
  files.gains_table = out_dir + "/gains.tsv";
  files.results = out_dir + "/results.json";
  files.timings = out_dir + "/timings.tsv";

  std::string header = "Model";
  for (const auto s : seeds) header += "\tSeed " + std::to_string(s);

  // Summary: AUPRC x 100 per seed.
  std::string summary = header + "\tMean±std\tTime\n";
  for (const auto& m : methods) {
    std::string row = m;
    std::vector<double> values;
    double time = 0.0;
    int runs = 0;
    for (const auto s : seeds) {
      const RunReport* r = find(m, s);
      if (r && r->ok()) {
        row += "\t" + Fixed(100.0 * r->test_macro_auprc, 2);
        values.push_back(100.0 * r->test_macro_auprc);
        time += r->wall_seconds;
        ++runs;
      } else {
        row += "\tNA";
      }
    }
    const auto [mean, std] = MeanStd(values);
    row += "\t" + (values.empty() ? std::string("NA")
                                  : Fixed(mean, 2) + "±" + Fixed(std, 2));
    row += "\t" + (runs ? Fixed(time / runs, 1) : std::string("NA"));
    summary += row + "\n";
    ++files.summary_rows;
  }
  WriteFile(files.summary_table, summary);

  // Gains over the baseline, paired by seed over seeds where both succeeded.
  std::string gains = header + "\tMean±std\n";
  for (const auto& m : methods) {
    if (m == baseline_method) continue;
    std::vector<double> method_values;
    std::vector<double> base_values;
    std::vector<int64_t> paired;
    std::string row = m;
    for (const auto s : seeds) {
      const RunReport* r = find(m, s);
      const RunReport* b = find(baseline_method, s);
      if (r && b && r->ok() && b->ok()) {
        method_values.push_back(r->test_macro_auprc);
        base_values.push_back(b->test_macro_auprc);
        paired.push_back(s);
        row += "\t" + Fixed(100.0 * (r->test_macro_auprc - b->test_macro_auprc), 2);
      } else {
        row += "\tNA";
      }
    }
    if (paired.empty()) continue;
    const GainSummary g =
        RelativeGains(method_values, paired, base_values, paired);
    row += "\t" + Fixed(g.mean, 2) + "±" + Fixed(g.std, 2);
    if (!g.std_defined) row += " (single seed)";
    gains += row + "\n";
    ++files.gain_rows;
  }
  WriteFile(files.gains_table, gains);

  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::string timings = "method\tseed\twall_seconds\tmean_epoch_seconds\n";
  for (const auto& m : methods) {
    for (const auto s : seeds) {
      const RunReport* r = find(m, s);
      if (!r) continue;
      results.push_back(ToJson(*r, /*with_timing=*/false));
      timings += m + "\t" + std::to_string(s) + "\t" + Fixed(r->wall_seconds, 3) +
                 "\t" + Fixed(r->mean_epoch_seconds, 6) + "\n";
      ++files.detail_rows;
    }
  }
  WriteFile(files.results, results.dump(2) + "\n");
  WriteFile(files.timings, timings);
  return files;
}

}  // namespace kgdistill
