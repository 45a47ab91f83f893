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

#include "shac/harness/metrics.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

namespace shac::harness {
namespace {

std::string Real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

double ParseReal(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
  return v;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

std::string FormatMetricsRow(const MetricsRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", r.episode, r.env_steps, Real(r.wall_time_s),
                     Real(r.policy_loss), Real(r.value_loss_final), Real(r.actor_grad_norm),
                     Real(r.eval_return_mean), Real(r.eval_return_std),
                     r.terminations_in_episode);
}

MetricsRow ParseMetricsRow(const std::string& line) {
  const auto f = SplitCsv(line);
  if (f.size() != 9) throw std::invalid_argument("metrics row needs 9 fields: " + line);
  MetricsRow r;
  r.episode = std::stoi(f[0]);
  r.env_steps = std::stol(f[1]);
  r.wall_time_s = ParseReal(f[2]);
  r.policy_loss = ParseReal(f[3]);
  r.value_loss_final = ParseReal(f[4]);
  r.actor_grad_norm = ParseReal(f[5]);
  r.eval_return_mean = ParseReal(f[6]);
  r.eval_return_std = ParseReal(f[7]);
  r.terminations_in_episode = std::stoi(f[8]);
  return r;
}

std::string FormatTimerRow(const TimerRow& r) {
  return fmt::format("{},{},{},{}", r.episode, Real(r.forward_s), Real(r.backward_s),
                     Real(r.critic_s));
}

std::vector<MetricsRow> ReadMetrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != kMetricsHeader) throw std::runtime_error(path.string() + " has an unexpected header");
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(ParseMetricsRow(line));
  }
  return rows;
}

CsvLog::CsvLog(const std::filesystem::path& path, const std::string& header, int keep_through) {
  std::vector<std::string> kept;
  if (keep_through >= 0 && std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (std::stoi(line.substr(0, line.find(','))) > keep_through) break;
      kept.push_back(line);
    }
  }
  file_ = std::fopen(path.string().c_str(), "w");
  if (!file_) throw std::runtime_error("cannot write " + path.string());
  fmt::print(file_, "{}\n", header);
  for (const auto& line : kept) fmt::print(file_, "{}\n", line);
  std::fflush(file_);
}

CsvLog::~CsvLog() {
  if (file_) std::fclose(file_);
}

void CsvLog::Append(const std::string& line) {
  fmt::print(file_, "{}\n", line);
  std::fflush(file_);
}

}  // namespace shac::harness
