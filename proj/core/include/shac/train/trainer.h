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

#ifndef SHAC_TRAIN_TRAINER_H_
#define SHAC_TRAIN_TRAINER_H_

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "shac/common/random.h"
#include "shac/envs/env.h"
#include "shac/nn/adam.h"
#include "shac/nn/normalizer.h"
#include "shac/nn/policy.h"
#include "shac/train/critic.h"
#include "shac/train/evaluate.h"
#include "shac/train/rollout.h"

namespace shac::train {

enum class Algorithm { kShac, kBptt, kShacNoCritic };

std::string_view AlgorithmName(Algorithm algo);
// throws std::invalid_argument for unknown names
Algorithm ParseAlgorithm(std::string_view name);

struct TrainOptions {
  Algorithm algorithm = Algorithm::kShac;
  int horizon = 32;  // short horizon h, or the BPTT window
  int num_envs = 64;
  int episodes = 500;
  double gamma = 0.99;
  double lambda = 0.95;
  double actor_lr = 2e-3;
  double critic_lr = 5e-4;
  double lr_end = 1e-5;
  bool lr_decay = true;
  double target_alpha = 0.995;
  double beta1 = 0.7;
  double beta2 = 0.95;
  int critic_iterations = 16;
  int critic_minibatches = 4;
  std::vector<int> actor_hidden = {64, 64};
  std::vector<int> critic_hidden = {64, 64};
  bool deterministic_policy = false;
  bool state_dependent_std = false;
  double init_log_std = 0;
  std::uint64_t seed = 0;
  int eval_interval = 10;
  int eval_rollouts = 16;

  bool uses_critic() const { return algorithm == Algorithm::kShac; }
};

struct EpisodeStats {
  int episode = 0;  // 1-based index of the finished episode
  long env_steps = 0;
  double policy_loss = 0;
  double value_loss = 0;
  double actor_grad_norm = 0;
  int terminations = 0;
  bool aborted = false;
  double forward_seconds = 0;
  double backward_seconds = 0;
  double critic_seconds = 0;
  Vec actor_grad;
};

struct PolicyGradient {
  double loss = 0;
  Vec grad;
  int terminations = 0;
};

// Mutable training state; everything a checkpoint must hold.
struct TrainerState {
  int episode = 0;
  long env_steps = 0;
  nn::ParamSet actor;
  nn::Adam actor_adam;
  Critic critic;
  nn::RunningNormalizer normalizer;
  std::vector<envs::EnvInstance> envs;
  RandomStream critic_rng;
};

// Short-horizon actor-critic; the BPTT baseline and the no-critic ablation
// share the same machinery with the terminal value switched off.
class Trainer {
 public:
  Trainer(const envs::EnvConfig& env, const TrainOptions& options);

  // one learning episode: rollout, actor step, critic fit, target blend,
  // normalizer update
  EpisodeStats RunEpisode();

  // loss and actor gradient of one window from the current environment
  // states, without any update; environments advance
  PolicyGradient ComputePolicyGradient(int horizon, bool bootstrap);
  // loss only, no records
  double ComputePolicyLoss(int horizon, bool bootstrap);

  EvalResult Evaluate(int rollouts, std::uint64_t stream, bool deterministic,
                      int tail_steps = 50) const;

  const envs::Task& task() const { return *task_; }
  std::shared_ptr<const envs::Task> task_ptr() const { return task_; }
  const TrainOptions& options() const { return options_; }
  const nn::GaussianPolicy& policy() const { return policy_; }
  const TrainerState& state() const { return state_; }
  TrainerState& mutable_state() { return state_; }

  RolloutSetup Setup(bool bootstrap, bool stochastic) const;

 private:
  std::shared_ptr<const envs::Task> task_;
  TrainOptions options_;
  nn::GaussianPolicy policy_;
  TrainerState state_;
  Window window_;
};

// random stream tags, combined with the run seed
inline constexpr std::uint64_t kEnvStreamTag = 1;
inline constexpr std::uint64_t kInitStreamTag = 2;
inline constexpr std::uint64_t kCriticStreamTag = 3;

}  // namespace shac::train

#endif  // SHAC_TRAIN_TRAINER_H_
