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

#ifndef SHAC_ENVS_HOPPER_H_
#define SHAC_ENVS_HOPPER_H_

#include "shac/envs/env.h"

namespace shac::envs {

// Planar one-legged hopper: free torso (x, height, angle) with hip, knee and
// ankle joints and two contact spheres under the foot. Coordinates are
// offsets from the nominal standing pose, so height 0 is standing.
// Observation [h, angle, vx, vy, angular rate, hip, knee, ankle, 3 joint rates].
class Hopper final : public Task {
 public:
  static constexpr double kFailureHeight = -0.45;

  explicit Hopper(EnvConfig config);

  std::string_view name() const override { return "hopper"; }
  int obs_dim() const override { return 11; }

  using Task::Observe;
  void Observe(const sim::SimState& state, Eigen::Ref<Vec> obs) const override;
  void ObserveBackward(const sim::SimState& state, const Eigen::Ref<const Vec>& obs_bar,
                       sim::AdjointState* bar) const override;
  double Reward(const sim::SimState& state, const Eigen::Ref<const Vec>& action) const override;
  void RewardBackward(const sim::SimState& state, const Eigen::Ref<const Vec>& action,
                      double scale, sim::AdjointState* bar,
                      Eigen::Ref<Vec> action_bar) const override;
  bool Failed(const sim::SimState& state) const override;

  static sim::ModelSpec Spec(const EnvConfig& config);
  static EnvConfig DefaultConfig();
};

}  // namespace shac::envs

#endif  // SHAC_ENVS_HOPPER_H_
