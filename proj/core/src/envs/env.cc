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

#include "shac/envs/env.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace shac::envs {

std::string_view DoneReasonName(DoneReason reason) {
  switch (reason) {
    case DoneReason::kNone: return "none";
    case DoneReason::kHorizon: return "horizon";
    case DoneReason::kFailure: return "failure";
  }
  return "none";
}

sim::SimState Task::SampleInitialState(RandomStream& rng) const {
  sim::SimState s = nominal_;
  const int n = model().dof();
  for (int i = 0; i < n; ++i) {
    const double r = config_.init_q_range[i];
    s.q[i] += rng.Uniform(-r, r);
  }
  for (int i = 0; i < n; ++i) {
    const double r = config_.init_qd_range[i];
    s.qd[i] += rng.Uniform(-r, r);
  }
  return s;
}

TransitionAdjoint TransitionBackward(const Task& task, const Transition& transition,
                                     const sim::AdjointState& post_bar, double reward_bar) {
  const int na = task.action_dim();
  TransitionAdjoint out{post_bar, Vec::Zero(na)};
  if (!transition.finite) {
    out.pre = sim::AdjointState::Zero(task.model().dof());
    return out;
  }
  if (reward_bar != 0) {
    task.RewardBackward(transition.post, transition.action, reward_bar, &out.pre, out.action);
  }
  sim::VecN sim_action_bar = sim::VecN::Zero(na);
  for (auto it = transition.substeps.rbegin(); it != transition.substeps.rend(); ++it) {
    sim::StepAdjoint step = sim::BackwardStep(task.model(), *it, out.pre);
    out.pre = step.state;
    sim_action_bar += step.action;
  }
  // clamping passes gradient only inside the bounds
  for (int i = 0; i < na; ++i) {
    const double a = transition.action[i];
    if (a > -1 && a < 1) out.action[i] += sim_action_bar[i];
  }
  return out;
}

EnvInstance::EnvInstance(std::shared_ptr<const Task> task, RandomStream rng)
    : task_(std::move(task)), rng_(std::move(rng)),
      state_(sim::SimState::Zero(task_->model().dof())) {}

Vec EnvInstance::Reset() {
  state_ = task_->SampleInitialState(rng_);
  steps_ = 0;
  return Observe();
}

void EnvInstance::set_state(const sim::SimState& state, int steps_since_reset) {
  state_ = state;
  steps_ = steps_since_reset;
}

StepOutcome EnvInstance::Step(const Eigen::Ref<const Vec>& action, Transition* transition) {
  const Task& task = *task_;
  if (action.size() != task.action_dim()) {
    throw std::invalid_argument(
        fmt::format("action has {} entries, {} expects {}", action.size(), task.name(),
                    task.action_dim()));
  }
  const int substeps = task.config().substeps;
  const double h = task.config().dt / substeps;
  sim::VecN clamped(action.size());
  for (int i = 0; i < action.size(); ++i) clamped[i] = std::clamp(action[i], -1.0, 1.0);
  if (transition) {
    transition->substeps.resize(substeps);
    transition->action = action;
  }

  bool finite = action.allFinite();
  for (int k = 0; k < substeps && finite; ++k) {
    sim::StepResult r = sim::ForwardStep(task.model(), state_, clamped, h,
                                         transition ? &transition->substeps[k] : nullptr);
    state_ = r.next;
    finite = r.finite;
  }

  StepOutcome out;
  ++steps_;
  if (finite) {
    out.reward = task.Reward(state_, action);
    finite = std::isfinite(out.reward);
  }
  if (!finite) {
    out.reward = 0;
    out.done = true;
    out.reason = DoneReason::kFailure;
  } else if (task.Failed(state_)) {
    out.done = true;
    out.reason = DoneReason::kFailure;
  } else if (steps_ >= task.horizon()) {
    out.done = true;
    out.reason = DoneReason::kHorizon;
  }
  if (transition) {
    transition->post = state_;
    transition->finite = finite;
  }
  return out;
}

}  // namespace shac::envs
