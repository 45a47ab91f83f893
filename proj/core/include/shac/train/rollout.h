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

#ifndef SHAC_TRAIN_ROLLOUT_H_
#define SHAC_TRAIN_ROLLOUT_H_

#include <vector>

#include "shac/envs/env.h"
#include "shac/nn/normalizer.h"
#include "shac/nn/policy.h"
#include "shac/train/critic.h"
#include "shac/train/td_lambda.h"

namespace shac::train {

// One time step of a window across all environments (columns).
struct WindowStep {
  std::vector<sim::SimState> start;  // states the actions were taken in
  Mat obs_raw;
  Mat obs;  // normalized
  Mat actions;  // policy output, before clamping
  nn::PolicyTrace policy;
  std::vector<envs::Transition> transitions;
  Vec rewards;
  Vec discount;  // gamma^(steps since the segment started)
  std::vector<char> done;
  std::vector<envs::DoneReason> reason;
  std::vector<char> bootstrap;  // terminal value term enters the policy loss
  Mat post_obs;     // normalized observation of the post-step state
  Vec next_values;  // target value of the post-step state, 0 after failure
  nn::MlpTrace value_trace;
};

// Trajectory batch of one learning episode: N environments times h steps.
struct Window {
  int horizon = 0;
  int num_envs = 0;
  std::vector<WindowStep> steps;
  double loss = 0;
  int terminations = 0;
};

struct RolloutSetup {
  const envs::Task* task = nullptr;
  const nn::GaussianPolicy* policy = nullptr;
  const nn::ParamSet* actor = nullptr;
  const Critic* critic = nullptr;  // null: no terminal value (BPTT, no-critic)
  const nn::RunningNormalizer* normalizer = nullptr;
  double gamma = 0.99;
  bool stochastic = true;
  bool record = true;  // keep substep records for the backward pass
};

// Steps every environment h times under the policy, resetting environments as
// they finish, and returns the policy loss
//   -1/(N h) sum_i sum_t [disc_t r_t + bootstrap_t disc_t gamma V'(s_{t+1})].
// The discount restarts at 1 after every reset; failures drop the terminal
// value, horizon ends keep it. Action noise is drawn from each environment's
// own random stream.
double RolloutWindow(const RolloutSetup& setup, std::vector<envs::EnvInstance>& envs,
                     int horizon, Window* window);

// Reverse sweep of RolloutWindow: accumulates d(loss)/d(actor) into grads.
// Adjoints never cross a reset or the window start.
void PolicyLossBackward(const RolloutSetup& setup, const Window& window, Vec* grads);

// per-step rewards, next values and segment ends laid out for TdLambdaTargets
void WindowTdInputs(const Window& window, Mat* rewards, Mat* next_values, BoolMat* ends);

}  // namespace shac::train

#endif  // SHAC_TRAIN_ROLLOUT_H_
