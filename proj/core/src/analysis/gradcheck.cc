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

#include "shac/analysis/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace shac::analysis {

double RelativeError(double a, double b) {
  const double diff = std::max(0.0, std::abs(a - b) - 1e-9);
  return diff / (std::abs(a) + std::abs(b) + 1e-9);
}

double GradientReport::FractionWithin(double tol) const {
  if (rel_err.empty()) return 1.0;
  const auto ok = std::count_if(rel_err.begin(), rel_err.end(), [&](double e) { return e <= tol; });
  return static_cast<double>(ok) / static_cast<double>(rel_err.size());
}

GradientReport FiniteDiffGradient(const std::function<double(const Vec&)>& loss,
                                  const Vec& params, const Vec& analytic, double epsilon,
                                  std::span<const int> entries, double alt_epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("finite differences need epsilon > 0");
  if (analytic.size() != params.size()) {
    throw std::invalid_argument("analytic gradient and parameters differ in length");
  }
  GradientReport report;
  report.epsilon = epsilon;
  report.alt_epsilon = alt_epsilon;
  Vec x = params;
  auto central = [&](int j, double eps) {
    x[j] = params[j] + eps;
    const double up = loss(x);
    x[j] = params[j] - eps;
    const double down = loss(x);
    x[j] = params[j];
    return (up - down) / (2 * eps);
  };
  for (int j : entries) {
    if (j < 0 || j >= params.size()) {
      throw std::invalid_argument(fmt::format("gradient entry {} out of range", j));
    }
    const double fd = central(j, epsilon);
    report.indices.push_back(j);
    report.analytic.push_back(analytic[j]);
    report.finite_diff.push_back(fd);
    report.rel_err.push_back(RelativeError(analytic[j], fd));
    if (alt_epsilon > 0) report.finite_diff_alt.push_back(central(j, alt_epsilon));
  }
  return report;
}

GradientReport CheckPolicyGradient(const train::Trainer& trainer, int horizon, bool bootstrap,
                                   double epsilon, std::span<const int> entries,
                                   double alt_epsilon) {
  train::Trainer analytic_copy = trainer;
  const train::PolicyGradient g = analytic_copy.ComputePolicyGradient(horizon, bootstrap);
  auto loss = [&](const Vec& values) {
    train::Trainer copy = trainer;
    copy.mutable_state().actor.values = values;
    return copy.ComputePolicyLoss(horizon, bootstrap);
  };
  return FiniteDiffGradient(loss, trainer.state().actor.values, g.grad, epsilon, entries,
                            alt_epsilon);
}

std::vector<int> SampleEntries(int size, int count, RandomStream& rng) {
  std::vector<int> all(size);
  std::iota(all.begin(), all.end(), 0);
  if (count >= size) return all;
  std::shuffle(all.begin(), all.end(), rng.engine());
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace shac::analysis
