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

#include "shac/envs/cartpole.h"

#include <cmath>
#include <numbers>

namespace shac::envs {

double WrapAngle(double angle) { return std::atan2(std::sin(angle), std::cos(angle)); }

EnvConfig CartPole::DefaultConfig() {
  EnvConfig c;
  c.name = "cartpole";
  c.dt = 1.0 / 60;
  c.substeps = 4;
  c.horizon = 240;
  c.action_limit = 40;
  c.init_q_range = {0.2, std::numbers::pi};
  c.init_qd_range = {0.1, 0.1};
  return c;
}

sim::ModelSpec CartPole::Spec(const EnvConfig& config) {
  sim::ModelSpec spec;
  spec.joints.push_back({"slider", sim::JointKind::kPrismatic, -1, sim::Vec2::UnitX(),
                         sim::Vec2::Zero(), std::nullopt});
  spec.joints.push_back({"hinge", sim::JointKind::kRevolute, 0, sim::Vec2::UnitX(),
                         sim::Vec2::Zero(), std::nullopt});
  spec.links.push_back({"cart", kCartMass, 0.1, sim::Vec2::Zero()});
  spec.links.push_back({"pole", kPoleMass, kPoleMass * kPoleLength * kPoleLength / 12,
                        sim::Vec2(0, kPoleLength / 2)});
  spec.actuators.push_back({0, config.action_limit});
  spec.contact = config.contact;
  spec.k_limit = config.k_limit;
  return spec;
}

CartPole::CartPole(EnvConfig config) : Task(std::move(config)) {
  set_model(sim::Model::Build(Spec(this->config())));
  nominal_ = sim::SimState::Zero(2);
}

void CartPole::Observe(const sim::SimState& s, Eigen::Ref<Vec> obs) const {
  obs << s.q[0], s.qd[0], std::sin(s.q[1]), std::cos(s.q[1]), s.qd[1];
}

void CartPole::ObserveBackward(const sim::SimState& s, const Eigen::Ref<const Vec>& obs_bar,
                               sim::AdjointState* bar) const {
  bar->dq[0] += obs_bar[0];
  bar->dqd[0] += obs_bar[1];
  bar->dq[1] += std::cos(s.q[1]) * obs_bar[2] - std::sin(s.q[1]) * obs_bar[3];
  bar->dqd[1] += obs_bar[4];
}

double CartPole::Reward(const sim::SimState& s, const Eigen::Ref<const Vec>&) const {
  const double x = s.q[0], th = WrapAngle(s.q[1]), xd = s.qd[0], thd = s.qd[1];
  return -th * th - 0.1 * thd * thd - 0.05 * x * x - 0.1 * xd * xd;
}

void CartPole::RewardBackward(const sim::SimState& s, const Eigen::Ref<const Vec>&,
                              double scale, sim::AdjointState* bar, Eigen::Ref<Vec>) const {
  bar->dq[0] += scale * -0.1 * s.q[0];
  bar->dq[1] += scale * -2 * WrapAngle(s.q[1]);
  bar->dqd[0] += scale * -0.2 * s.qd[0];
  bar->dqd[1] += scale * -0.2 * s.qd[1];
}

sim::VecN CartPole::CanonicalPositions(const sim::SimState& s) const {
  sim::VecN q = s.q;
  q[1] = WrapAngle(q[1]);
  return q;
}

}  // namespace shac::envs
