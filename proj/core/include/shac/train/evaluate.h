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

#ifndef SHAC_TRAIN_EVALUATE_H_
#define SHAC_TRAIN_EVALUATE_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "shac/envs/env.h"
#include "shac/nn/normalizer.h"
#include "shac/nn/policy.h"

namespace shac::train {

inline constexpr std::uint64_t kEvalStreamTag = 4;

struct EvalResult {
  std::vector<double> returns;  // undiscounted, one per rollout
  std::vector<int> lengths;
  double mean = 0;
  double stddev = 0;  // population
  // mean |q| per coordinate over the last tail_steps states of each rollout,
  // averaged over rollouts
  Eigen::VectorXd tail_abs_q;
};

// Full-horizon rollouts (until failure or the task horizon) from fresh
// environments seeded with (seed, kEvalStreamTag, stream, k).
EvalResult EvaluatePolicy(std::shared_ptr<const envs::Task> task,
                          const nn::GaussianPolicy& policy, const nn::ParamSet& actor,
                          const nn::RunningNormalizer& normalizer, int rollouts,
                          std::uint64_t seed, std::uint64_t stream, bool deterministic,
                          int tail_steps);

}  // namespace shac::train

#endif  // SHAC_TRAIN_EVALUATE_H_
