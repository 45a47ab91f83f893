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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "acceptance.h"
#include "shac/common/log.h"
#include "shac/harness/run.h"

namespace shac::acceptance {
namespace {

namespace fs = std::filesystem;

// physics constants pinned here rather than inherited from library defaults
constexpr const char* kCartPoleEnv = R"(env:
  name: cartpole
  dt: 0.016666666666666666
  substeps: 4
  horizon: 240
  action_limit: 40
  k_limit: 1000
)";

constexpr const char* kHopperEnv = R"(env:
  name: hopper
  dt: 0.016666666666666666
  substeps: 16
  horizon: 1000
  action_limit: 60
  k_limit: 1000
  contact: {k_n: 10000, k_d: 100, k_t: 1000, mu: 0.9}
)";

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double Quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

harness::RunConfig CartPoleRun(const Context& ctx, int seed) {
  const std::string text = fmt::format(
      "{}algo: shac\nseed: {}\nh: 32\nN: 64\nM: 500\ngamma: 0.99\nlambda: 0.95\n"
      "actor_lr: 0.01\ncritic_lr: 0.001\ntarget_alpha: 0.2\n"
      "eval_interval: 25\neval_rollouts: 16\ncheckpoint_interval: 250\ngrad_log_interval: 0\n"
      "out: {}\n",
      kCartPoleEnv, seed, (ctx.runs / fmt::format("cartpole_shac_seed{}", seed)).string());
  return harness::ParseRunConfig(text);
}

harness::RunConfig HopperRun(const Context& ctx, const std::string& algo, int seed) {
  // equal simulation steps: 500 windows of 32 or 125 windows of 128
  const bool bptt = algo == "bptt";
  const std::string text = fmt::format(
      "{}algo: {}\nseed: {}\nh: {}\nN: 64\nM: {}\ngamma: 0.99\nlambda: 0.95\n"
      "eval_interval: 25\neval_rollouts: 16\ncheckpoint_interval: {}\ngrad_log_interval: 0\n"
      "out: {}\n",
      kHopperEnv, algo, seed, bptt ? 128 : 32, bptt ? 125 : 500, bptt ? 0 : 250,
      (ctx.runs / fmt::format("hopper_{}_seed{}", algo, seed)).string());
  return harness::ParseRunConfig(text);
}

void EnsureRun(const harness::RunConfig& config) {
  const fs::path out(config.out);
  if (fs::exists(out / "final") && fs::exists(out / "config.yaml") &&
      ReadFile(out / "config.yaml") == harness::FormatRunConfig(config)) {
    return;
  }
  fs::remove_all(out);
  log::Info(fmt::format("training {}", out.string()));
  harness::RunTraining(config);
}

double Median(std::vector<double> v) { return Quantile(std::move(v), 0.5); }

double InterquartileRange(std::vector<double> v) {
  return Quantile(v, 0.75) - Quantile(v, 0.25);
}

}  // namespace shac::acceptance
