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

#ifndef SHAC_ENVS_CARTPOLE_H_
#define SHAC_ENVS_CARTPOLE_H_

#include "shac/envs/env.h"

namespace shac::envs {

// angle mapped to (-pi, pi]
double WrapAngle(double angle);

// Cart on a horizontal rail with a free pole; the pole angle is zero upright
// and increases counter-clockwise. Observation [x, xd, sin(th), cos(th), thd].
// The reward sees the pole angle wrapped to (-pi, pi].
class CartPole final : public Task {
 public:
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.5;
  static constexpr double kPoleLength = 1.0;

  explicit CartPole(EnvConfig config);

  std::string_view name() const override { return "cartpole"; }
  int obs_dim() const override { return 5; }

  using Task::Observe;
  void Observe(const sim::SimState& state, Eigen::Ref<Vec> obs) const override;
  void ObserveBackward(const sim::SimState& state, const Eigen::Ref<const Vec>& obs_bar,
                       sim::AdjointState* bar) const override;
  double Reward(const sim::SimState& state, const Eigen::Ref<const Vec>& action) const override;
  void RewardBackward(const sim::SimState& state, const Eigen::Ref<const Vec>& action,
                      double scale, sim::AdjointState* bar,
                      Eigen::Ref<Vec> action_bar) const override;
  bool Failed(const sim::SimState&) const override { return false; }
  sim::VecN CanonicalPositions(const sim::SimState& state) const override;

  static sim::ModelSpec Spec(const EnvConfig& config);
  static EnvConfig DefaultConfig();
};

}  // namespace shac::envs

#endif  // SHAC_ENVS_CARTPOLE_H_
