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

#ifndef SHAC_ANALYSIS_LANDSCAPE_H_
#define SHAC_ANALYSIS_LANDSCAPE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "shac/train/trainer.h"

namespace shac::analysis {

using Vec = Eigen::VectorXd;

enum class LossEvaluator {
  kFull,       // discounted return over the task horizon, stopping at failure
  kSurrogate,  // short-horizon return plus the discounted target value
};

std::string_view LossEvaluatorName(LossEvaluator evaluator);
LossEvaluator ParseLossEvaluator(std::string_view name);

inline constexpr std::uint64_t kLandscapeStreamTag = 5;

// one actor weight: a named parameter slice and a flat index into it
struct WeightId {
  std::string slice;
  int index = 0;
};

// flat offset into the actor vector; throws std::invalid_argument when the
// slice does not exist or the index is out of range
int ResolveWeight(const nn::ParamSet& actor, const WeightId& weight);
// "<slice>[<index>]"
std::string FormatWeight(const WeightId& weight);
// random weight drawn uniformly over all actor entries
WeightId SampleWeight(const nn::ParamSet& actor, RandomStream& rng);

struct LandscapeScan {
  WeightId weight;
  std::vector<double> deltas;
  std::vector<double> losses;
  LossEvaluator evaluator = LossEvaluator::kFull;
  int trajectories = 0;
  std::uint64_t seed = 0;
};

// Mean loss -1/N sum_i G_i of N stochastic trajectories from fresh
// environments seeded with (seed, kLandscapeStreamTag, i). G_i is the
// discounted return of the evaluator's window; the surrogate adds
// gamma^h V'(s_h) unless the trajectory failed. Uses the trainer's
// normalizer, target critic, gamma and horizon.
double EvaluateLoss(const train::Trainer& trainer, const Vec& actor_values,
                    LossEvaluator evaluator, int trajectories, std::uint64_t seed);

// deltas must be strictly increasing
LandscapeScan ScanWeight(const train::Trainer& trainer, const WeightId& weight,
                         const std::vector<double>& deltas, LossEvaluator evaluator,
                         int trajectories, std::uint64_t seed);

// losses(a, b) at actor + deltas_a[a] * dir_a + deltas_b[b] * dir_b
Eigen::MatrixXd ScanPlane(const train::Trainer& trainer, const Vec& dir_a, const Vec& dir_b,
                          const std::vector<double>& deltas_a,
                          const std::vector<double>& deltas_b, LossEvaluator evaluator,
                          int trajectories, std::uint64_t seed);

// random direction with entries N(0, 1), rescaled per slice to the slice's
// norm
Vec RandomDirection(const nn::ParamSet& actor, RandomStream& rng);

// sum_k |y_{k+1} - y_k|
double TotalVariation(const std::vector<double>& values);

// n points evenly spaced over [lo, hi]
std::vector<double> Linspace(double lo, double hi, int n);

}  // namespace shac::analysis

#endif  // SHAC_ANALYSIS_LANDSCAPE_H_
