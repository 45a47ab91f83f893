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

#ifndef SHAC_ENVS_ENV_H_
#define SHAC_ENVS_ENV_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "shac/common/random.h"
#include "shac/sim/model.h"
#include "shac/sim/step.h"
#include "shac/sim/types.h"

namespace shac::envs {

using Vec = Eigen::VectorXd;

enum class DoneReason { kNone, kHorizon, kFailure };

std::string_view DoneReasonName(DoneReason reason);

// Numeric task parameters; every physics constant is overridable from the
// run configuration.
struct EnvConfig {
  std::string name = "cartpole";
  double dt = 1.0 / 60;  // control period (s), split into substeps
  int substeps = 4;
  int horizon = 240;
  double action_limit = 40;  // gear applied to actions in [-1, 1]
  sim::ContactParams contact;
  double k_limit = 1e3;
  // initial state: nominal + U(-range, range) per coordinate
  std::vector<double> init_q_range;
  std::vector<double> init_qd_range;
};

// Stateless description of a task: model, initial distribution, observation,
// reward and failure test, each with hand-written adjoints.
class Task {
 public:
  explicit Task(EnvConfig config) : config_(std::move(config)) {}
  virtual ~Task() = default;

  virtual std::string_view name() const = 0;
  virtual int obs_dim() const = 0;
  int action_dim() const { return model_->num_actuators(); }
  int horizon() const { return config_.horizon; }
  const sim::Model& model() const { return *model_; }
  const EnvConfig& config() const { return config_; }

  sim::SimState SampleInitialState(RandomStream& rng) const;

  virtual void Observe(const sim::SimState& state, Eigen::Ref<Vec> obs) const = 0;
  // bar += (d obs / d state)^T obs_bar
  virtual void ObserveBackward(const sim::SimState& state,
                               const Eigen::Ref<const Vec>& obs_bar,
                               sim::AdjointState* bar) const = 0;

  // reward of the post-step state under the unclamped action
  virtual double Reward(const sim::SimState& state, const Eigen::Ref<const Vec>& action) const = 0;
  // bar += scale * dR/dstate, action_bar += scale * dR/daction
  virtual void RewardBackward(const sim::SimState& state, const Eigen::Ref<const Vec>& action,
                              double scale, sim::AdjointState* bar,
                              Eigen::Ref<Vec> action_bar) const = 0;

  virtual bool Failed(const sim::SimState& state) const = 0;

  // positions with angles folded into one turn, for reporting
  virtual sim::VecN CanonicalPositions(const sim::SimState& state) const { return state.q; }

  Vec Observe(const sim::SimState& state) const {
    Vec obs(obs_dim());
    Observe(state, obs);
    return obs;
  }

 protected:
  void set_model(sim::Model model) { model_ = std::make_shared<const sim::Model>(std::move(model)); }
  sim::SimState nominal_;

 private:
  EnvConfig config_;
  std::shared_ptr<const sim::Model> model_;
};

// Cached substeps of one environment step, enough to differentiate it.
struct Transition {
  std::vector<sim::StepRecord> substeps;
  Vec action;  // as given, before clamping
  sim::SimState post;
  bool finite = true;
};

struct StepOutcome {
  double reward = 0;
  bool done = false;
  DoneReason reason = DoneReason::kNone;
};

struct TransitionAdjoint {
  sim::AdjointState pre;
  Vec action;
};

// d/d(pre state, action) of  post_bar . post + reward_bar * reward.
TransitionAdjoint TransitionBackward(const Task& task, const Transition& transition,
                                     const sim::AdjointState& post_bar, double reward_bar);

// One environment: the task plus mutable state and a private random stream.
// Step() never resets; callers reset after done.
class EnvInstance {
 public:
  EnvInstance(std::shared_ptr<const Task> task, RandomStream rng);

  Vec Reset();
  StepOutcome Step(const Eigen::Ref<const Vec>& action, Transition* transition = nullptr);

  const Task& task() const { return *task_; }
  const sim::SimState& state() const { return state_; }
  void set_state(const sim::SimState& state, int steps_since_reset);
  int steps_since_reset() const { return steps_; }
  RandomStream& rng() { return rng_; }
  const RandomStream& rng() const { return rng_; }
  Vec Observe() const { return task_->Observe(state_); }

 private:
  std::shared_ptr<const Task> task_;
  RandomStream rng_;
  sim::SimState state_;
  int steps_ = 0;
};

}  // namespace shac::envs

#endif  // SHAC_ENVS_ENV_H_
