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

#ifndef KGDISTILL_REPORT_H_
#define KGDISTILL_REPORT_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace kgdistill {

struct RunReport {
  std::string method;
  int64_t seed = 0;
  // "ok" or "failed".
  std::string status = "ok";
  std::string error;
  double best_valid_auprc = 0.0;
  int best_epoch = -1;
  double test_macro_auprc = 0.0;
  // (relation name, AUPRC) in target-relation order.
  std::vector<std::pair<std::string, double>> test_per_relation;
  double wall_seconds = 0.0;
  double mean_epoch_seconds = 0.0;
  std::string event_log;
  std::map<std::string, std::string> config;

  bool ok() const { return status == "ok"; }
  // Throws kgdistill::Error when an AUPRC is outside [0, 1] or the
  // per-relation values do not average to the macro value within 1e-12.
  void Validate() const;
};

// Timing fields are omitted when `with_timing` is false so that two runs of
// the same plan serialize identically.
nlohmann::ordered_json ToJson(const RunReport& report, bool with_timing);
RunReport RunReportFromJson(const nlohmann::ordered_json& j);

struct ReportFiles {
  std::string summary_table;
  std::string gains_table;
  std::string results;
  std::string timings;
  int summary_rows = 0;
  int detail_rows = 0;
  int gain_rows = 0;
};

// Writes into `out_dir`:
//   summary.tsv   Model, one column per seed, Mean±std, Time (AUPRC x 100)
//   gains.tsv     per-seed gains of every method over `baseline_method`
//   results.json  one record per run, without timing
//   timings.tsv   wall time per run
// Methods keep their order of first appearance; seeds are sorted. Failed
// runs appear in results.json but not in the tables.
ReportFiles EmitReport(const std::vector<RunReport>& reports,
                       const std::string& out_dir,
                       const std::string& baseline_method = "baseline");

}  // namespace kgdistill

#endif  // KGDISTILL_REPORT_H_
