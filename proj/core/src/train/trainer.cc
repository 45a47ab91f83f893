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

#include "shac/train/trainer.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "shac/common/log.h"
#include "shac/envs/registry.h"
#include "shac/train/td_lambda.h"

namespace shac::train {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

}  // namespace

std::string_view AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kShac: return "shac";
    case Algorithm::kBptt: return "bptt";
    case Algorithm::kShacNoCritic: return "shac-no-critic";
  }
  return "shac";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "shac") return Algorithm::kShac;
  if (name == "bptt") return Algorithm::kBptt;
  if (name == "shac-no-critic") return Algorithm::kShacNoCritic;
  throw std::invalid_argument(
      fmt::format("unknown algorithm '{}' (expected shac, bptt or shac-no-critic)", name));
}

Trainer::Trainer(const envs::EnvConfig& env, const TrainOptions& options)
    : task_(envs::MakeTask(env)), options_(options) {
  if (options.horizon < 1) throw std::invalid_argument("h must be >= 1");
  if (options.num_envs < 1) throw std::invalid_argument("N must be >= 1");
  const std::uint64_t seed = options.seed;
  nn::PolicySpec spec;
  spec.obs_dim = task_->obs_dim();
  spec.action_dim = task_->action_dim();
  spec.hidden = options.actor_hidden;
  spec.state_dependent_std = options.state_dependent_std;
  spec.init_log_std = options.init_log_std;
  policy_ = nn::GaussianPolicy(spec, &state_.actor);

  const nn::AdamConfig adam{options.beta1, options.beta2, 1e-8};
  RandomStream init_rng({seed, kInitStreamTag});
  policy_.Initialize(&state_.actor, init_rng);
  state_.actor_adam = nn::Adam(state_.actor.size(), adam);
  state_.critic = Critic(task_->obs_dim(), options.critic_hidden, adam);
  state_.critic.Initialize(init_rng);
  state_.normalizer = nn::RunningNormalizer(task_->obs_dim());
  state_.critic_rng = RandomStream({seed, kCriticStreamTag});
  for (int i = 0; i < options.num_envs; ++i) {
    state_.envs.emplace_back(task_, RandomStream({seed, kEnvStreamTag, static_cast<std::uint64_t>(i)}));
    state_.envs.back().Reset();
  }
}

RolloutSetup Trainer::Setup(bool bootstrap, bool stochastic) const {
  RolloutSetup s;
  s.task = task_.get();
  s.policy = &policy_;
  s.actor = &state_.actor;
  s.critic = bootstrap ? &state_.critic : nullptr;
  s.normalizer = &state_.normalizer;
  s.gamma = options_.gamma;
  s.stochastic = stochastic;
  return s;
}

PolicyGradient Trainer::ComputePolicyGradient(int horizon, bool bootstrap) {
  const RolloutSetup setup = Setup(bootstrap, !options_.deterministic_policy);
  PolicyGradient out;
  out.loss = RolloutWindow(setup, state_.envs, horizon, &window_);
  out.terminations = window_.terminations;
  out.grad = Vec::Zero(state_.actor.size());
  PolicyLossBackward(setup, window_, &out.grad);
  return out;
}

double Trainer::ComputePolicyLoss(int horizon, bool bootstrap) {
  RolloutSetup setup = Setup(bootstrap, !options_.deterministic_policy);
  setup.record = false;
  Window w;
  return RolloutWindow(setup, state_.envs, horizon, &w);
}

EpisodeStats Trainer::RunEpisode() {
  EpisodeStats stats;
  const int h = options_.horizon;
  const int n = options_.num_envs;
  const bool critic = options_.uses_critic();
  const int m = state_.episode;
  const double actor_lr =
      options_.lr_decay ? nn::LinearDecay(options_.actor_lr, options_.lr_end, m, options_.episodes)
                        : options_.actor_lr;
  const double critic_lr =
      options_.lr_decay ? nn::LinearDecay(options_.critic_lr, options_.lr_end, m, options_.episodes)
                        : options_.critic_lr;

  const RolloutSetup setup = Setup(critic, !options_.deterministic_policy);
  auto start = Clock::now();
  stats.policy_loss = RolloutWindow(setup, state_.envs, h, &window_);
  stats.terminations = window_.terminations;
  stats.forward_seconds = Seconds(start);

  start = Clock::now();
  Vec grad = Vec::Zero(state_.actor.size());
  PolicyLossBackward(setup, window_, &grad);
  stats.actor_grad_norm = grad.norm();
  stats.backward_seconds = Seconds(start);

  if (!std::isfinite(stats.policy_loss) || !grad.allFinite()) {
    log::Warn(fmt::format("episode {}: non-finite policy loss or gradient, episode aborted", m + 1));
    stats.aborted = true;
    for (auto& env : state_.envs) env.Reset();
  } else {
    state_.actor_adam.Step(&state_.actor.values, grad, actor_lr);
  }
  stats.actor_grad = std::move(grad);

  start = Clock::now();
  if (critic && !stats.aborted) {
    Mat rewards, next_values;
    BoolMat ends;
    WindowTdInputs(window_, &rewards, &next_values, &ends);
    const Mat targets = TdLambdaTargets(rewards, next_values, ends, options_.gamma, options_.lambda);
    Mat inputs(task_->obs_dim(), static_cast<long>(h) * n);
    Vec flat_targets(static_cast<long>(h) * n);
    for (int t = 0; t < h; ++t) {
      inputs.middleCols(static_cast<long>(t) * n, n) = window_.steps[t].obs;
      flat_targets.segment(static_cast<long>(t) * n, n) = targets.row(t).transpose();
    }
    CriticFitOptions fit{options_.critic_iterations, options_.critic_minibatches, critic_lr};
    stats.value_loss = FitCritic(&state_.critic, inputs, flat_targets, fit, state_.critic_rng);
    BlendInto(&state_.critic.target, state_.critic.params, options_.target_alpha);
  }
  stats.critic_seconds = Seconds(start);

  Mat observed(task_->obs_dim(), static_cast<long>(h) * n);
  for (int t = 0; t < h; ++t) {
    observed.middleCols(static_cast<long>(t) * n, n) = window_.steps[t].obs_raw;
  }
  state_.normalizer.Update(observed);

  ++state_.episode;
  state_.env_steps += static_cast<long>(h) * n;
  stats.episode = state_.episode;
  stats.env_steps = state_.env_steps;
  return stats;
}

EvalResult Trainer::Evaluate(int rollouts, std::uint64_t stream, bool deterministic,
                             int tail_steps) const {
  return EvaluatePolicy(task_, policy_, state_.actor, state_.normalizer, rollouts,
                        options_.seed, stream, deterministic, tail_steps);
}

}  // namespace shac::train
