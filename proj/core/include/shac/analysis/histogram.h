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

#ifndef SHAC_ANALYSIS_HISTOGRAM_H_
#define SHAC_ANALYSIS_HISTOGRAM_H_

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace shac::analysis {

struct Histogram {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<long> counts;

  long total() const;
};

// Equal-width bins over [-max|v|, max|v|]; the top edge is inclusive. An
// all-zero input collapses into the single bin [0, 0].
Histogram BuildHistogram(std::span<const double> values, int bins);

// Per-episode gradient dumps: "<dir>/grad_<episode>.bin", little-endian
// float64 preceded by a text line "shac-grad 1 <count>".
std::filesystem::path GradientLogPath(const std::filesystem::path& dir, int episode);
void WriteGradientLog(const std::filesystem::path& dir, int episode, const Eigen::VectorXd& grad);
// throws std::runtime_error naming the episode when the log is missing or
// malformed
std::vector<double> ReadGradientLog(const std::filesystem::path& dir, int episode);

// bin_lo,bin_hi,count
void WriteHistogramCsv(const std::filesystem::path& path, const Histogram& histogram);

}  // namespace shac::analysis

#endif  // SHAC_ANALYSIS_HISTOGRAM_H_
