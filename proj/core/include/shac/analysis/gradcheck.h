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

#ifndef SHAC_ANALYSIS_GRADCHECK_H_
#define SHAC_ANALYSIS_GRADCHECK_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "shac/train/trainer.h"

namespace shac::analysis {

using Vec = Eigen::VectorXd;

// |a - b| relative to |a| + |b|, with absolute differences below 1e-9
// treated as exact
double RelativeError(double a, double b);

struct GradientReport {
  std::vector<int> indices;
  std::vector<double> analytic;
  std::vector<double> finite_diff;
  std::vector<double> rel_err;
  double epsilon = 0;
  // central differences at a second step size, for spotting kinks
  double alt_epsilon = 0;
  std::vector<double> finite_diff_alt;

  // fraction of entries with rel_err <= tol
  double FractionWithin(double tol) const;
};

// Central differences (L(x + eps e_j) - L(x - eps e_j)) / (2 eps) over the
// given entries, compared against analytic. loss must be deterministic in its
// argument (common random numbers). alt_epsilon <= 0 disables the second pass.
GradientReport FiniteDiffGradient(const std::function<double(const Vec&)>& loss,
                                  const Vec& params, const Vec& analytic, double epsilon,
                                  std::span<const int> entries, double alt_epsilon = 0);

// Policy-loss gradient of a trainer's current state against finite
// differences. Every evaluation runs on a copy of the trainer, so both sides
// replay identical environment states and noise streams.
GradientReport CheckPolicyGradient(const train::Trainer& trainer, int horizon, bool bootstrap,
                                   double epsilon, std::span<const int> entries,
                                   double alt_epsilon = 0);

// count distinct random entries of [0, size) in increasing order, or all of
// them when count >= size
std::vector<int> SampleEntries(int size, int count, RandomStream& rng);

}  // namespace shac::analysis

#endif  // SHAC_ANALYSIS_GRADCHECK_H_
