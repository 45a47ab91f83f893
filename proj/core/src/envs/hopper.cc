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

#include "shac/envs/hopper.h"

#include <algorithm>
#include <numbers>

namespace shac::envs {
namespace {

constexpr double kDeg = std::numbers::pi / 180;
constexpr double kFootRadius = 0.06;
// hip to foot bottom when standing straight
constexpr double kLegReach = 0.2 + 0.45 + 0.5 + kFootRadius;
constexpr double kUprightLimit = std::numbers::pi / 6;
constexpr double kHeightOffset = 0.3;

}  // namespace

EnvConfig Hopper::DefaultConfig() {
  EnvConfig c;
  c.name = "hopper";
  c.dt = 1.0 / 60;
  c.substeps = 16;
  c.horizon = 1000;
  c.action_limit = 60;
  c.init_q_range.assign(6, 0.05);
  c.init_qd_range.assign(6, 0.05);
  return c;
}

sim::ModelSpec Hopper::Spec(const EnvConfig& config) {
  using sim::JointKind;
  using sim::Vec2;
  sim::ModelSpec spec;
  spec.links = {{"torso", 3.53, 0.047, Vec2::Zero()},
                {"thigh", 3.93, 0.066, Vec2(0, -0.225)},
                {"leg", 2.71, 0.056, Vec2(0, -0.25)},
                {"foot", 5.09, 0.065, Vec2(0.065, 0)}};
  double weight = 0;
  for (const auto& l : spec.links) weight += l.mass * spec.gravity;
  // stand on the static penetration of the two foot spheres
  const double sink = config.contact.k_n > 0 ? weight / (2 * config.contact.k_n) : 0.0;
  spec.joints = {
      {"root", JointKind::kFreePlanar, -1, Vec2::UnitX(), Vec2(0, kLegReach - sink),
       std::nullopt},
      {"hip", JointKind::kRevolute, 0, Vec2::UnitX(), Vec2(0, -0.2),
       sim::JointLimit{-150 * kDeg, 0}},
      {"knee", JointKind::kRevolute, 1, Vec2::UnitX(), Vec2(0, -0.45),
       sim::JointLimit{-150 * kDeg, 0}},
      {"ankle", JointKind::kRevolute, 2, Vec2::UnitX(), Vec2(0, -0.5),
       sim::JointLimit{-45 * kDeg, 45 * kDeg}},
  };
  spec.contact_spheres = {{3, Vec2(-0.13, 0), kFootRadius}, {3, Vec2(0.26, 0), kFootRadius}};
  spec.actuators = {{1, config.action_limit}, {2, config.action_limit}, {3, config.action_limit}};
  spec.contact = config.contact;
  spec.k_limit = config.k_limit;
  return spec;
}

Hopper::Hopper(EnvConfig config) : Task(std::move(config)) {
  set_model(sim::Model::Build(Spec(this->config())));
  nominal_ = sim::SimState::Zero(6);
}

void Hopper::Observe(const sim::SimState& s, Eigen::Ref<Vec> obs) const {
  obs << s.q[1], s.q[2], s.qd[0], s.qd[1], s.qd[2], s.q[3], s.q[4], s.q[5], s.qd[3],
      s.qd[4], s.qd[5];
}

void Hopper::ObserveBackward(const sim::SimState&, const Eigen::Ref<const Vec>& g,
                             sim::AdjointState* bar) const {
  bar->dq[1] += g[0];
  bar->dq[2] += g[1];
  bar->dqd[0] += g[2];
  bar->dqd[1] += g[3];
  bar->dqd[2] += g[4];
  for (int j = 0; j < 3; ++j) {
    bar->dq[3 + j] += g[5 + j];
    bar->dqd[3 + j] += g[8 + j];
  }
}

double Hopper::Reward(const sim::SimState& s, const Eigen::Ref<const Vec>& action) const {
  const double progress = s.qd[0];
  const double dh = std::clamp(s.q[1] + kHeightOffset, -1.0, 0.3);
  const double height = dh < 0 ? -200 * dh * dh : dh;
  const double tilt = s.q[2] / kUprightLimit;
  const double upright = 1 - tilt * tilt;
  return progress + height + upright - 0.1 * action.squaredNorm();
}

void Hopper::RewardBackward(const sim::SimState& s, const Eigen::Ref<const Vec>& action,
                            double scale, sim::AdjointState* bar,
                            Eigen::Ref<Vec> action_bar) const {
  bar->dqd[0] += scale;
  const double raw = s.q[1] + kHeightOffset;
  if (raw > -1 && raw < 0.3) {
    bar->dq[1] += scale * (raw < 0 ? -400 * raw : 1.0);
  }
  bar->dq[2] += scale * -2 * s.q[2] / (kUprightLimit * kUprightLimit);
  action_bar += scale * -0.2 * action;
}

bool Hopper::Failed(const sim::SimState& s) const { return s.q[1] < kFailureHeight; }

}  // namespace shac::envs
