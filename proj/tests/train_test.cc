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

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "shac/train/critic.h"
#include "shac/train/rollout.h"
#include "shac/train/td_lambda.h"
#include "shac/train/trainer.h"
#include "test_util.h"

namespace shac::train {
namespace {

// Unactuated point sliding at unit speed; fails once past a threshold.
class Slider final : public envs::Task {
 public:
  Slider(double reward, double fail_at) : Task(Config()), reward_(reward), fail_at_(fail_at) {
    sim::ModelSpec spec;
    spec.joints.push_back({"slide", sim::JointKind::kPrismatic, -1, sim::Vec2::UnitX(),
                           sim::Vec2::Zero(), std::nullopt});
    spec.links.push_back({"puck", 1.0, 1.0, sim::Vec2::Zero()});
    spec.actuators.push_back({0, 0.0});
    set_model(sim::Model::Build(spec));
    nominal_ = sim::SimState::Zero(1);
    nominal_.qd[0] = 1;
  }

  static envs::EnvConfig Config() {
    envs::EnvConfig c;
    c.name = "slider";
    c.dt = 0.1;
    c.substeps = 1;
    c.horizon = 1000;
    c.init_q_range = {0};
    c.init_qd_range = {0};
    return c;
  }

  std::string_view name() const override { return "slider"; }
  int obs_dim() const override { return 2; }
  using Task::Observe;
  void Observe(const sim::SimState& s, Eigen::Ref<envs::Vec> obs) const override {
    obs << s.q[0], s.qd[0];
  }
  void ObserveBackward(const sim::SimState&, const Eigen::Ref<const envs::Vec>& g,
                       sim::AdjointState* bar) const override {
    bar->dq[0] += g[0];
    bar->dqd[0] += g[1];
  }
  double Reward(const sim::SimState&, const Eigen::Ref<const envs::Vec>&) const override {
    return reward_;
  }
  void RewardBackward(const sim::SimState&, const Eigen::Ref<const envs::Vec>&, double,
                      sim::AdjointState*, Eigen::Ref<envs::Vec>) const override {}
  bool Failed(const sim::SimState& s) const override { return s.q[0] > fail_at_; }

 private:
  double reward_;
  double fail_at_;
};

// Critic whose every output is v0.
Critic ConstantCritic(int obs_dim, double v0) {
  Critic critic(obs_dim, {4}, nn::AdamConfig{});
  RandomStream rng({1});
  critic.Initialize(rng);
  critic.target.values.setZero();
  const int bias = critic.target.Find("critic.l1.bias");
  critic.target.Block(bias).setConstant(v0);
  critic.params.values = critic.target.values;
  return critic;
}

struct SliderSetup {
  std::shared_ptr<Slider> task;
  nn::ParamSet actor;
  nn::GaussianPolicy policy;
  nn::RunningNormalizer normalizer{2};
  std::vector<envs::EnvInstance> envs;

  SliderSetup(double reward, double fail_at, int n) : task(std::make_shared<Slider>(reward, fail_at)) {
    nn::PolicySpec spec;
    spec.obs_dim = 2;
    spec.action_dim = 1;
    spec.hidden = {4};
    policy = nn::GaussianPolicy(spec, &actor);
    RandomStream rng({2});
    policy.Initialize(&actor, rng);
    for (int i = 0; i < n; ++i) {
      envs.emplace_back(task, RandomStream({3, static_cast<std::uint64_t>(i)}));
      envs.back().Reset();
    }
  }

  RolloutSetup Setup(const Critic* critic, double gamma) const {
    RolloutSetup s;
    s.task = task.get();
    s.policy = &policy;
    s.actor = &actor;
    s.critic = critic;
    s.normalizer = &normalizer;
    s.gamma = gamma;
    return s;
  }
};

// explicit enumeration of k-step returns and their lambda weights
Mat BruteForceTdLambda(const Mat& r, const Mat& v, const BoolMat& end, double gamma, double lambda) {
  const int h = static_cast<int>(r.rows());
  Mat out(r.rows(), r.cols());
  for (int i = 0; i < r.cols(); ++i) {
    for (int t = 0; t < h; ++t) {
      int last = t;
      while (last < h - 1 && !end(last, i)) ++last;
      const int kmax = last - t + 1;
      double total = 0;
      for (int k = 1; k <= kmax; ++k) {
        double g = 0;
        for (int l = 0; l < k; ++l) g += std::pow(gamma, l) * r(t + l, i);
        g += std::pow(gamma, k) * v(t + k - 1, i);
        const double w = k < kmax ? (1 - lambda) * std::pow(lambda, k - 1) : std::pow(lambda, k - 1);
        total += w * g;
      }
      out(t, i) = total;
    }
  }
  return out;
}

TEST(TdLambda, MatchesBruteForce) {
  RandomStream rng({10});
  for (int trial = 0; trial < 100; ++trial) {
    const int h = 1 + static_cast<int>(rng.Uniform(0, 12));
    const int n = 1 + static_cast<int>(rng.Uniform(0, 5));
    Mat r(h, n), v(h, n);
    BoolMat end(h, n);
    for (int t = 0; t < h; ++t) {
      for (int i = 0; i < n; ++i) {
        r(t, i) = rng.Uniform(-2, 2);
        end(t, i) = rng.Uniform(0, 1) < 0.2;
        v(t, i) = end(t, i) && rng.Uniform(0, 1) < 0.5 ? 0.0 : rng.Uniform(-5, 5);
      }
    }
    const double gamma = rng.Uniform(0.5, 1.0);
    const double lambda = rng.Uniform(0, 1);
    const Mat fast = TdLambdaTargets(r, v, end, gamma, lambda);
    EXPECT_LT((fast - BruteForceTdLambda(r, v, end, gamma, lambda)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TdLambda, LimitsAndExample) {
  RandomStream rng({11});
  const int h = 6, n = 3;
  Mat r(h, n), v(h, n);
  for (int t = 0; t < h; ++t) {
    for (int i = 0; i < n; ++i) {
      r(t, i) = rng.Uniform(-1, 1);
      v(t, i) = rng.Uniform(-1, 1);
    }
  }
  const BoolMat none = BoolMat::Constant(h, n, false);
  const double gamma = 0.9;
  const Mat one_step = TdLambdaTargets(r, v, none, gamma, 0);
  EXPECT_LT((one_step - (r + gamma * v)).cwiseAbs().maxCoeff(), 1e-14);
  const Mat full = TdLambdaTargets(r, v, none, gamma, 1);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < h; ++t) {
      double g = 0;
      for (int l = 0; t + l < h; ++l) g += std::pow(gamma, l) * r(t + l, i);
      g += std::pow(gamma, h - t) * v(h - 1, i);
      EXPECT_NEAR(full(t, i), g, 1e-12);
    }
  }
  Mat r3(3, 1);
  r3 << 1, 2, 3;
  const Mat example = TdLambdaTargets(r3, Mat::Zero(3, 1), BoolMat::Constant(3, 1, false), 1, 0.5);
  EXPECT_NEAR(example(0, 0), 2.75, 1e-14);
  EXPECT_THROW(TdLambdaTargets(r3, Mat::Zero(2, 1), BoolMat::Constant(3, 1, false), 1, 0.5),
               std::invalid_argument);
}

TEST(Critic, MseExamples) {
  Vec grad;
  EXPECT_EQ(MseLoss(Vec::Constant(4, 2.5), Vec::Constant(4, 2.5), &grad), 0);
  EXPECT_TRUE(grad.isZero(0));
  EXPECT_EQ(MseLoss(Vec::Zero(1), Vec::Ones(1), &grad), 1);
  EXPECT_EQ(grad[0], -2);
}

TEST(Critic, ConstantCriticAtTargetHasZeroGradient) {
  Critic critic = ConstantCritic(3, 1.5);
  RandomStream rng({12});
  const Mat x = Mat::Random(3, 8);
  nn::MlpTrace trace;
  const Mat pred = critic.net.Forward(critic.params, x, &trace);
  Vec grad;
  EXPECT_NEAR(MseLoss(pred.row(0).transpose(), Vec::Constant(8, 1.5), &grad), 0, 1e-28);
  critic.params.ZeroGrad();
  critic.net.Backward(critic.params, critic.params.values, trace, grad.transpose(), &critic.params.grads);
  EXPECT_LT(critic.params.grads.norm(), 1e-14);
}

TEST(Critic, FitReducesLoss) {
  RandomStream rng({13});
  int improved = 0;
  constexpr int kTrials = 100;
  for (int trial = 0; trial < kTrials; ++trial) {
    Critic critic(3, {16, 16}, nn::AdamConfig{});
    critic.Initialize(rng);
    Mat x(3, 64);
    Vec y(64);
    for (int k = 0; k < 64; ++k) {
      x.col(k) = testing::RandomVec(3, 1.0, rng);
      y[k] = std::sin(2 * x(0, k)) + x(1, k) * x(2, k) + rng.Uniform(-3, 3);
    }
    auto loss = [&] {
      return MseLoss(critic.net.Forward(critic.params, x).row(0).transpose(), y, nullptr);
    };
    const double before = loss();
    FitCritic(&critic, x, y, CriticFitOptions{16, 4, 1e-3}, rng);
    improved += loss() <= before;
  }
  EXPECT_GE(improved, 0.95 * kTrials);
}

TEST(Critic, FitRejectsBadShapes) {
  Critic critic(2, {4}, nn::AdamConfig{});
  RandomStream rng({14});
  EXPECT_THROW(FitCritic(&critic, Mat::Zero(2, 4), Vec::Zero(3), CriticFitOptions{}, rng),
               std::invalid_argument);
  EXPECT_THROW(FitCritic(&critic, Mat::Zero(2, 3), Vec::Zero(3), CriticFitOptions{1, 4, 1e-3}, rng),
               std::invalid_argument);
}

TEST(Critic, TargetBlend) {
  nn::ParamSet target, source;
  target.Add("w", 3);
  source.Add("w", 3);
  source.values.setOnes();
  nn::ParamSet t = target;
  BlendInto(&t, source, 0.995);
  EXPECT_NEAR(t.values[0], 0.005, 1e-15);
  t = target;
  BlendInto(&t, source, 0);
  EXPECT_EQ(t.values, source.values);
  t = target;
  BlendInto(&t, source, 1);
  EXPECT_EQ(t.values, target.values);
  nn::ParamSet other;
  other.Add("w", 2);
  EXPECT_THROW(BlendInto(&t, other, 0.5), std::invalid_argument);
}

TEST(PolicyLoss, ConstantValueWithoutReward) {
  for (int h : {1, 4, 9}) {
    SliderSetup s(0.0, std::numeric_limits<double>::infinity(), 3);
    const Critic critic = ConstantCritic(2, 2.5);
    Window w;
    const double gamma = 0.97;
    const double loss = RolloutWindow(s.Setup(&critic, gamma), s.envs, h, &w);
    EXPECT_NEAR(loss, -std::pow(gamma, h) * 2.5 / h, 1e-14);
  }
}

TEST(PolicyLoss, SingleStep) {
  SliderSetup s(0.7, std::numeric_limits<double>::infinity(), 1);
  const Critic critic = ConstantCritic(2, -1.25);
  Window w;
  EXPECT_NEAR(RolloutWindow(s.Setup(&critic, 0.9), s.envs, 1, &w), -(0.7 + 0.9 * -1.25), 1e-14);
}

TEST(PolicyLoss, DiscountRestartsAfterTermination) {
  const double gamma = 0.9;
  const double v0 = 4.0;
  SliderSetup s(1.0, 0.25, 2);
  const Critic critic = ConstantCritic(2, v0);
  Window w;
  const int h = 8;
  const double loss = RolloutWindow(s.Setup(&critic, gamma), s.envs, h, &w);
  // fails after 3 steps, twice: rewards 1, g, g^2 | 1, g, g^2 | 1, g, then g^2 * V
  const double g = gamma;
  const double per_env = 2 * (1 + g + g * g) + (1 + g) + g * g * v0;
  EXPECT_NEAR(loss, -per_env / h, 1e-14);
  EXPECT_EQ(w.terminations, 4);
  for (int t : {2, 5}) {
    EXPECT_TRUE(w.steps[t].done[0]);
    EXPECT_EQ(w.steps[t].reason[0], envs::DoneReason::kFailure);
    EXPECT_FALSE(w.steps[t].bootstrap[0]);
    EXPECT_EQ(w.steps[t].next_values[0], 0);
  }
  EXPECT_EQ(w.steps[3].discount[0], 1);
  // the stored rewards and discounts reproduce the loss
  double total = 0;
  for (const auto& step : w.steps) {
    for (int i = 0; i < 2; ++i) {
      total += step.discount[i] * step.rewards[i];
      if (step.bootstrap[i]) total += step.discount[i] * gamma * step.next_values[i];
    }
  }
  EXPECT_NEAR(-total / (2.0 * h), loss, 1e-12);
}

TEST(PolicyLoss, CriticTermIsOnlyDifferenceFromBptt) {
  envs::EnvConfig env = envs::CartPole::DefaultConfig();
  TrainOptions opts;
  opts.horizon = 16;
  opts.num_envs = 4;
  opts.actor_hidden = {16};
  opts.critic_hidden = {16};
  Trainer trainer(env, opts);
  const Critic critic = ConstantCritic(5, 3.0);
  trainer.mutable_state().critic = critic;
  Trainer bptt = trainer;
  const double with = trainer.ComputePolicyLoss(opts.horizon, true);
  const double without = bptt.ComputePolicyLoss(opts.horizon, false);
  EXPECT_NEAR(with - without, -std::pow(opts.gamma, opts.horizon) * 3.0 / opts.horizon, 1e-12);
}

TrainOptions TinyOptions(Algorithm algo) {
  TrainOptions opts;
  opts.algorithm = algo;
  opts.horizon = 8;
  opts.num_envs = 4;
  opts.episodes = 10;
  opts.actor_hidden = {16, 16};
  opts.critic_hidden = {16, 16};
  opts.critic_iterations = 2;
  opts.seed = 5;
  return opts;
}

TEST(PolicyGradient, MatchesFiniteDifferences) {
  for (Algorithm algo : {Algorithm::kShac, Algorithm::kBptt}) {
    for (const char* env_name : {"cartpole", "hopper"}) {
      const envs::EnvConfig env =
          std::string(env_name) == "cartpole" ? envs::CartPole::DefaultConfig() : envs::Hopper::DefaultConfig();
      Trainer trainer(env, TinyOptions(algo));
      // train briefly so the critic and normalizer are not at their initial values
      for (int k = 0; k < 3; ++k) trainer.RunEpisode();
      const bool bootstrap = algo == Algorithm::kShac;
      Trainer probe = trainer;
      const Vec grad = probe.ComputePolicyGradient(8, bootstrap).grad;
      RandomStream rng({15});
      Vec analytic(40), numeric(40);
      for (int k = 0; k < 40; ++k) {
        const int idx = static_cast<int>(rng.Uniform(0, trainer.state().actor.size()));
        const double eps = 1e-6;
        Trainer up = trainer, down = trainer;
        up.mutable_state().actor.values[idx] += eps;
        down.mutable_state().actor.values[idx] -= eps;
        numeric[k] = (up.ComputePolicyLoss(8, bootstrap) - down.ComputePolicyLoss(8, bootstrap)) / (2 * eps);
        analytic[k] = grad[idx];
      }
      EXPECT_LT(testing::RelativeNormError(analytic, numeric), 1e-4)
          << env_name << " " << AlgorithmName(algo);
    }
  }
}

TEST(PolicyGradient, DependsOnlyOnCurrentState) {
  Trainer trained(envs::CartPole::DefaultConfig(), TinyOptions(Algorithm::kShac));
  for (int k = 0; k < 3; ++k) trained.RunEpisode();
  // same parameters and environment states, different history
  Trainer fresh(envs::CartPole::DefaultConfig(), TinyOptions(Algorithm::kShac));
  TrainerState& st = fresh.mutable_state();
  st.actor = trained.state().actor;
  st.critic = trained.state().critic;
  st.normalizer = trained.state().normalizer;
  for (std::size_t i = 0; i < st.envs.size(); ++i) {
    const envs::EnvInstance& src = trained.state().envs[i];
    st.envs[i].set_state(src.state(), src.steps_since_reset());
    st.envs[i].rng() = src.rng();
  }
  const PolicyGradient a = trained.ComputePolicyGradient(8, true);
  const PolicyGradient b = fresh.ComputePolicyGradient(8, true);
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.grad, b.grad);
}

TEST(Trainer, EpisodeAppliesOneAdamStep) {
  TrainOptions opts = TinyOptions(Algorithm::kShac);
  Trainer trainer(envs::CartPole::DefaultConfig(), opts);
  trainer.RunEpisode();
  Trainer manual = trainer;
  const EpisodeStats stats = trainer.RunEpisode();

  const PolicyGradient g = manual.ComputePolicyGradient(opts.horizon, true);
  EXPECT_EQ(g.loss, stats.policy_loss);
  EXPECT_EQ(g.grad, stats.actor_grad);
  Vec values = manual.state().actor.values;
  nn::Adam adam = manual.state().actor_adam;
  adam.Step(&values, g.grad, nn::LinearDecay(opts.actor_lr, opts.lr_end, 1, opts.episodes));
  EXPECT_EQ(values, trainer.state().actor.values);
  EXPECT_EQ(trainer.state().actor_adam.step_count(), 2);
}

TEST(Trainer, CriticFitLeavesActorAlone) {
  Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions(Algorithm::kShac));
  trainer.RunEpisode();
  const Vec actor = trainer.state().actor.values;
  const Vec mean = trainer.state().normalizer.mean;
  Critic& critic = trainer.mutable_state().critic;
  RandomStream rng({16});
  FitCritic(&critic, Mat::Random(5, 16), Vec::Random(16), CriticFitOptions{4, 2, 1e-3}, rng);
  EXPECT_EQ(trainer.state().actor.values, actor);
  EXPECT_EQ(trainer.state().normalizer.mean, mean);
}

TEST(Trainer, Deterministic) {
  for (Algorithm algo : {Algorithm::kShac, Algorithm::kBptt, Algorithm::kShacNoCritic}) {
    Trainer a(envs::Hopper::DefaultConfig(), TinyOptions(algo));
    Trainer b(envs::Hopper::DefaultConfig(), TinyOptions(algo));
    for (int k = 0; k < 3; ++k) {
      const EpisodeStats sa = a.RunEpisode();
      const EpisodeStats sb = b.RunEpisode();
      EXPECT_EQ(sa.policy_loss, sb.policy_loss);
      EXPECT_EQ(sa.value_loss, sb.value_loss);
      EXPECT_EQ(sa.terminations, sb.terminations);
    }
    EXPECT_EQ(a.state().actor.values, b.state().actor.values);
    EXPECT_EQ(a.state().critic.target.values, b.state().critic.target.values);
    const EvalResult ea = a.Evaluate(2, 0, true, 10);
    const EvalResult eb = b.Evaluate(2, 0, true, 10);
    EXPECT_EQ(ea.returns, eb.returns);
  }
}

TEST(Trainer, Accounting) {
  TrainOptions opts = TinyOptions(Algorithm::kBptt);
  Trainer trainer(envs::CartPole::DefaultConfig(), opts);
  const Vec critic = trainer.state().critic.params.values;
  EpisodeStats stats;
  for (int k = 0; k < 3; ++k) stats = trainer.RunEpisode();
  EXPECT_EQ(stats.episode, 3);
  EXPECT_EQ(stats.env_steps, 3L * opts.horizon * opts.num_envs);
  EXPECT_EQ(trainer.state().normalizer.count, 3.0 * opts.horizon * opts.num_envs);
  // algorithms without a critic never train one
  EXPECT_EQ(trainer.state().critic.params.values, critic);
  EXPECT_EQ(stats.value_loss, 0);
}

TEST(Trainer, RejectsBadOptions) {
  TrainOptions opts = TinyOptions(Algorithm::kShac);
  opts.horizon = 0;
  EXPECT_THROW(Trainer(envs::CartPole::DefaultConfig(), opts), std::invalid_argument);
  opts.horizon = 4;
  opts.num_envs = 0;
  EXPECT_THROW(Trainer(envs::CartPole::DefaultConfig(), opts), std::invalid_argument);
  EXPECT_THROW(ParseAlgorithm("ppo"), std::invalid_argument);
  EXPECT_EQ(ParseAlgorithm(AlgorithmName(Algorithm::kShacNoCritic)), Algorithm::kShacNoCritic);
}

TEST(Evaluate, DeterministicReturnsAreRepeatable) {
  Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions(Algorithm::kShac));
  const EvalResult a = trainer.Evaluate(4, 7, true, 20);
  const EvalResult b = trainer.Evaluate(4, 7, true, 20);
  EXPECT_EQ(a.returns, b.returns);
  ASSERT_EQ(a.lengths.size(), 4u);
  for (int len : a.lengths) EXPECT_EQ(len, 240);
  EXPECT_EQ(a.tail_abs_q.size(), 2);
  double mean = 0;
  for (double r : a.returns) mean += r / 4;
  EXPECT_NEAR(a.mean, mean, 1e-9);
}

}  // namespace
}  // namespace shac::train
