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

#include "shac/analysis/histogram.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include <fmt/core.h>
#include <fmt/os.h>

namespace shac::analysis {
namespace {

constexpr const char* kGradMagic = "shac-grad";
constexpr int kGradVersion = 1;

std::uint64_t ToLittle(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(bits);
  return bits;
}

}  // namespace

long Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

Histogram BuildHistogram(std::span<const double> values, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  double bound = 0;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("histogram input is not finite");
    bound = std::max(bound, std::abs(v));
  }
  Histogram h;
  if (bound == 0) {
    h.lo = {0};
    h.hi = {0};
    h.counts = {static_cast<long>(values.size())};
    return h;
  }
  const double width = 2 * bound / bins;
  for (int b = 0; b < bins; ++b) {
    h.lo.push_back(-bound + b * width);
    h.hi.push_back(b + 1 == bins ? bound : -bound + (b + 1) * width);
  }
  h.counts.assign(bins, 0);
  for (double v : values) {
    const int b = std::clamp(static_cast<int>(std::floor((v + bound) / width)), 0, bins - 1);
    ++h.counts[b];
  }
  return h;
}

std::filesystem::path GradientLogPath(const std::filesystem::path& dir, int episode) {
  return dir / fmt::format("grad_{}.bin", episode);
}

void WriteGradientLog(const std::filesystem::path& dir, int episode, const Eigen::VectorXd& grad) {
  std::filesystem::create_directories(dir);
  std::ofstream out(GradientLogPath(dir, episode), std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write gradient log for episode {}", episode));
  out << kGradMagic << ' ' << kGradVersion << ' ' << grad.size() << '\n';
  for (double v : grad) {
    const std::uint64_t bits = ToLittle(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
}

std::vector<double> ReadGradientLog(const std::filesystem::path& dir, int episode) {
  const auto path = GradientLogPath(dir, episode);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(
        fmt::format("no gradient log for episode {} ({})", episode, path.string()));
  }
  std::string magic;
  int version = 0;
  long count = -1;
  in >> magic >> version >> count;
  if (magic != kGradMagic || version != kGradVersion || count < 0 || in.get() != '\n') {
    throw std::runtime_error(fmt::format("gradient log for episode {} is malformed", episode));
  }
  std::vector<double> values(count);
  for (double& v : values) {
    std::uint64_t bits = 0;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
      throw std::runtime_error(fmt::format("gradient log for episode {} is truncated", episode));
    }
    v = std::bit_cast<double>(ToLittle(bits));
  }
  return values;
}

void WriteHistogramCsv(const std::filesystem::path& path, const Histogram& histogram) {
  auto out = fmt::output_file(path.string());
  out.print("bin_lo,bin_hi,count\n");
  for (size_t b = 0; b < histogram.counts.size(); ++b) {
    out.print("{:.17g},{:.17g},{}\n", histogram.lo[b], histogram.hi[b], histogram.counts[b]);
  }
}

}  // namespace shac::analysis
