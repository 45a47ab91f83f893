// Copyright 2026 The shac-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHAC_HARNESS_METRICS_H_
#define SHAC_HARNESS_METRICS_H_

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace shac::harness {

struct MetricsRow {
  int episode = 0;
  long env_steps = 0;
  double wall_time_s = 0;
  double policy_loss = 0;
  double value_loss_final = 0;
  double actor_grad_norm = 0;
  double eval_return_mean = 0;  // nan on rows without an evaluation
  double eval_return_std = 0;
  int terminations_in_episode = 0;
};

struct TimerRow {
  int episode = 0;
  double forward_s = 0;
  double backward_s = 0;
  double critic_s = 0;
};

inline constexpr const char* kMetricsHeader =
    "episode,env_steps,wall_time_s,policy_loss,value_loss_final,actor_grad_norm,"
    "eval_return_mean,eval_return_std,terminations_in_episode";
inline constexpr const char* kTimersHeader = "episode,forward_s,backward_s,critic_s";

// Reals are written with 17 significant digits; non-finite values as nan/inf.
std::string FormatMetricsRow(const MetricsRow& row);
MetricsRow ParseMetricsRow(const std::string& line);
std::string FormatTimerRow(const TimerRow& row);

// Reads every data row of a metrics.csv.
std::vector<MetricsRow> ReadMetrics(const std::filesystem::path& path);

// Append-only CSV with a fixed header; each row is flushed as it is written.
// Opening an existing file keeps its rows up to and including keep_through
// (for resumed runs) and drops the rest; a negative value truncates.
class CsvLog {
 public:
  CsvLog(const std::filesystem::path& path, const std::string& header, int keep_through = -1);
  ~CsvLog();
  CsvLog(const CsvLog&) = delete;
  CsvLog& operator=(const CsvLog&) = delete;

  void Append(const std::string& line);

 private:
  std::FILE* file_ = nullptr;
};

}  // namespace shac::harness

#endif  // SHAC_HARNESS_METRICS_H_
