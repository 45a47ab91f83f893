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

#include "shac/train/rollout.h"

#include <stdexcept>

namespace shac::train {

double RolloutWindow(const RolloutSetup& setup, std::vector<envs::EnvInstance>& envs,
                     int horizon, Window* window) {
  if (horizon < 1 || envs.empty()) throw std::invalid_argument("rollout: need h >= 1 and N >= 1");
  const envs::Task& task = *setup.task;
  const int n = static_cast<int>(envs.size());
  const int obs_dim = task.obs_dim();
  const int act_dim = task.action_dim();
  const double gamma = setup.gamma;

  window->horizon = horizon;
  window->num_envs = n;
  window->steps.resize(horizon);
  window->terminations = 0;
  Vec discount = Vec::Ones(n);
  double total = 0;

  for (int t = 0; t < horizon; ++t) {
    WindowStep& step = window->steps[t];
    step.start.resize(n);
    step.obs_raw.resize(obs_dim, n);
    for (int i = 0; i < n; ++i) {
      step.start[i] = envs[i].state();
      task.Observe(envs[i].state(), step.obs_raw.col(i));
    }
    step.obs = setup.normalizer->Apply(step.obs_raw);
    Mat noise;
    if (setup.stochastic) {
      noise.resize(act_dim, n);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < act_dim; ++k) noise(k, i) = envs[i].rng().Normal();
      }
    }
    step.actions = setup.policy->Forward(*setup.actor, step.obs, setup.stochastic ? &noise : nullptr,
                                         &step.policy);

    step.transitions.resize(n);
    step.rewards.resize(n);
    step.discount = discount;
    step.done.assign(n, 0);
    step.reason.assign(n, envs::DoneReason::kNone);
    step.bootstrap.assign(n, 0);
    Mat post_raw(obs_dim, n);
    for (int i = 0; i < n; ++i) {
      const envs::StepOutcome out =
          envs[i].Step(step.actions.col(i), setup.record ? &step.transitions[i] : nullptr);
      step.rewards[i] = out.reward;
      step.done[i] = out.done;
      step.reason[i] = out.reason;
      task.Observe(envs[i].state(), post_raw.col(i));
      if (!post_raw.col(i).allFinite()) post_raw.col(i).setZero();
      if (out.done) {
        if (out.reason == envs::DoneReason::kFailure) ++window->terminations;
        envs[i].Reset();
      }
      const bool last = t + 1 == horizon;
      step.bootstrap[i] = setup.critic && ((last && !out.done) ||
                                           (out.done && out.reason == envs::DoneReason::kHorizon));
      total += discount[i] * out.reward;
    }
    step.post_obs = setup.normalizer->Apply(post_raw);
    step.next_values = Vec::Zero(n);
    if (setup.critic) {
      const Mat values = setup.critic->net.Forward(setup.critic->target, setup.critic->target.values,
                                                   step.post_obs, &step.value_trace);
      for (int i = 0; i < n; ++i) {
        const bool failed = step.done[i] && step.reason[i] == envs::DoneReason::kFailure;
        step.next_values[i] = failed ? 0.0 : values(0, i);
        if (step.bootstrap[i]) total += discount[i] * gamma * step.next_values[i];
      }
    }
    for (int i = 0; i < n; ++i) discount[i] = step.done[i] ? 1.0 : discount[i] * gamma;
  }
  window->loss = -total / (static_cast<double>(n) * horizon);
  return window->loss;
}

void PolicyLossBackward(const RolloutSetup& setup, const Window& window, Vec* grads) {
  const envs::Task& task = *setup.task;
  const int n = window.num_envs;
  const int dof = task.model().dof();
  const double scale = -1.0 / (static_cast<double>(n) * window.horizon);
  const Vec obs_scale = setup.normalizer->Scale();

  nn::ParamSet actor = *setup.actor;
  actor.grads = *grads;

  std::vector<sim::AdjointState> carried(n, sim::AdjointState::Zero(dof));
  for (int t = window.horizon - 1; t >= 0; --t) {
    const WindowStep& step = window.steps[t];

    // terminal values: d/d(post obs) of the target critic, one batched pass
    Mat value_grad = Mat::Zero(1, n);
    bool any_bootstrap = false;
    for (int i = 0; i < n; ++i) {
      if (step.bootstrap[i]) {
        value_grad(0, i) = scale * step.discount[i] * setup.gamma;
        any_bootstrap = true;
      }
    }
    Mat post_obs_grad;
    if (any_bootstrap) {
      post_obs_grad = setup.critic->net.Backward(setup.critic->target, setup.critic->target.values,
                                                 step.value_trace, value_grad, nullptr);
    }

    Mat action_grad(task.action_dim(), n);
    for (int i = 0; i < n; ++i) {
      // the next step started from a reset state, not from this post state
      if (step.done[i]) carried[i] = sim::AdjointState::Zero(dof);
      if (step.bootstrap[i]) {
        const Vec g = post_obs_grad.col(i).cwiseProduct(obs_scale);
        task.ObserveBackward(step.transitions[i].post, g, &carried[i]);
      }
      const envs::TransitionAdjoint adj = envs::TransitionBackward(
          task, step.transitions[i], carried[i], scale * step.discount[i]);
      carried[i] = adj.pre;
      action_grad.col(i) = adj.action;
    }

    const Mat obs_grad = setup.policy->Backward(&actor, step.policy, action_grad);
    for (int i = 0; i < n; ++i) {
      const Vec g = obs_grad.col(i).cwiseProduct(obs_scale);
      task.ObserveBackward(step.start[i], g, &carried[i]);
    }
  }
  *grads = std::move(actor.grads);
}

void WindowTdInputs(const Window& window, Mat* rewards, Mat* next_values, BoolMat* ends) {
  const int h = window.horizon, n = window.num_envs;
  rewards->resize(h, n);
  next_values->resize(h, n);
  ends->resize(h, n);
  for (int t = 0; t < h; ++t) {
    const WindowStep& s = window.steps[t];
    rewards->row(t) = s.rewards.transpose();
    next_values->row(t) = s.next_values.transpose();
    for (int i = 0; i < n; ++i) (*ends)(t, i) = s.done[i] != 0;
  }
}

}  // namespace shac::train
