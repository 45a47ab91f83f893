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

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/core.h>

#include "acceptance.h"
#include "shac/analysis/gradcheck.h"
#include "shac/envs/registry.h"
#include "shac/train/td_lambda.h"
#include "test_util.h"

namespace shac::acceptance {
namespace {

using sim::AdjointState;
using sim::Model;
using sim::SimState;
using sim::StepRecord;
using sim::VecN;

// relative error of the one-step adjoint against central differences of <w, next state>
double StepError(const Model& model, const SimState& s, const VecN& a, double dt,
                 const AdjointState& w) {
  const int n = model.dof();
  const int m = static_cast<int>(a.size());
  StepRecord rec;
  sim::ForwardStep(model, s, a, dt, &rec);
  const sim::StepAdjoint adj = sim::BackwardStep(model, rec, w);
  Eigen::VectorXd analytic(2 * n + m);
  analytic << adj.state.dq, adj.state.dqd, adj.action;

  Eigen::VectorXd x(2 * n + m);
  x << s.q, s.qd, a;
  auto loss = [&](const Eigen::VectorXd& y) {
    const SimState next =
        sim::ForwardStep(model, {y.head(n), y.segment(n, n)}, y.tail(m), dt).next;
    return w.dq.dot(next.q) + w.dqd.dot(next.qd);
  };
  return testing::RelativeNormError(analytic, testing::CentralGradient(loss, x, 1e-6));
}

struct Tally {
  int trials = 0;
  int within = 0;
  double worst = 0;
};

// draws until `trials` samples pass the filter; the model is re-randomized for every sample
Tally CheckSteps(int trials, double tol, const std::function<Model(RandomStream&)>& make_model,
                 const std::function<SimState(RandomStream&)>& make_state, int num_actions,
                 double dt, bool need_contact, RandomStream& rng) {
  Tally t;
  while (t.trials < trials) {
    const Model model = make_model(rng);
    const SimState s = make_state(rng);
    const VecN a = testing::RandomVec(num_actions, 1.0, rng);
    StepRecord rec;
    sim::ForwardStep(model, s, a, dt, &rec);
    if (need_contact && !testing::AnyContact(rec)) continue;
    if (!testing::AwayFromSwitches(model, rec, 1e-4)) continue;
    const int n = model.dof();
    const AdjointState w{testing::RandomVec(n, 1.0, rng), testing::RandomVec(n, 1.0, rng)};
    const double err = StepError(model, s, a, dt, w);
    ++t.trials;
    t.within += err <= tol;
    t.worst = std::max(t.worst, err);
  }
  return t;
}

using train::BoolMat;
using train::Mat;

// every k-step return of every start, weighted (1 - lambda) lambda^(k-1), with the
// remaining weight on the longest return inside the segment
Mat EnumeratedTargets(const Mat& r, const Mat& v, const BoolMat& end, double gamma,
                      double lambda) {
  const int h = static_cast<int>(r.rows());
  Mat out = Mat::Zero(r.rows(), r.cols());
  for (int i = 0; i < r.cols(); ++i) {
    for (int t = 0; t < h; ++t) {
      std::vector<double> returns;
      double discounted = 0, discount = 1;
      for (int u = t; u < h; ++u) {
        discounted += discount * r(u, i);
        discount *= gamma;
        returns.push_back(discounted + discount * v(u, i));
        if (end(u, i)) break;
      }
      const int kmax = static_cast<int>(returns.size());
      double weight_left = 1;
      for (int k = 1; k < kmax; ++k) {
        const double wk = (1 - lambda) * std::pow(lambda, k - 1);
        out(t, i) += wk * returns[k - 1];
        weight_left -= wk;
      }
      out(t, i) += weight_left * returns[kmax - 1];
    }
  }
  return out;
}

}  // namespace

Outcome GradientExactness(const Context&) {
  RandomStream rng({2026, 1});
  const envs::EnvConfig cp_cfg = envs::DefaultEnvConfig("cartpole");
  const envs::EnvConfig hop_cfg = envs::DefaultEnvConfig("hopper");
  const double cp_dt = cp_cfg.dt / cp_cfg.substeps;
  const double hop_dt = hop_cfg.dt / hop_cfg.substeps;
  const sim::ModelSpec cp_spec = envs::CartPole::Spec(cp_cfg);
  const sim::ModelSpec hop_spec = envs::Hopper::Spec(hop_cfg);
  sim::ModelSpec floating = hop_spec;
  floating.ground_height = -100;

  const Tally cartpole = CheckSteps(
      1000, 1e-6, [&](RandomStream& r) { return Model::Build(testing::PerturbSpec(cp_spec, r)); },
      [](RandomStream& r) { return testing::RandomState(2, M_PI, 4.0, r); }, 1, cp_dt, false,
      rng);
  const Tally free = CheckSteps(
      1000, 1e-6, [&](RandomStream& r) { return Model::Build(testing::PerturbSpec(floating, r)); },
      [](RandomStream& r) { return testing::RandomState(6, 1.0, 2.0, r); }, 3, hop_dt, false,
      rng);
  const Tally contact = CheckSteps(
      1000, 1e-4, [&](RandomStream& r) { return Model::Build(testing::PerturbSpec(hop_spec, r)); },
      [](RandomStream& r) {
        SimState s = testing::RandomState(6, 0.3, 1.0, r);
        s.q[1] = r.Uniform(-0.03, 0.005);
        s.q[2] = r.Uniform(-0.1, 0.1);
        s.q[5] = r.Uniform(-0.1, 0.1);
        s.qd[1] = r.Uniform(-0.3, 0.3);
        return s;
      },
      3, hop_dt, true, rng);

  Outcome out;
  out.pass = cartpole.within == cartpole.trials && free.within == free.trials &&
             contact.within == contact.trials;
  out.detail = fmt::format(
      "cartpole {}/{} (worst {:.1e}), hopper contact-free {}/{} (worst {:.1e}), "
      "hopper in contact {}/{} (worst {:.1e})",
      cartpole.within, cartpole.trials, cartpole.worst, free.within, free.trials, free.worst,
      contact.within, contact.trials, contact.worst);
  return out;
}

Outcome ChainedRolloutGradient(const Context&) {
  train::TrainOptions opts;
  opts.horizon = 8;
  opts.num_envs = 8;
  opts.actor_hidden = {16, 16};
  opts.critic_hidden = {16, 16};
  opts.seed = 11;
  opts.episodes = 100;
  train::Trainer trainer(envs::DefaultEnvConfig("cartpole"), opts);

  Outcome out{true, ""};
  for (int stage = 0; stage < 2; ++stage) {
    // second check after some learning, away from the initial weights
    if (stage == 1) {
      for (int m = 0; m < 50; ++m) trainer.RunEpisode();
    }
    RandomStream rng({opts.seed, 6, static_cast<std::uint64_t>(stage)});
    const std::vector<int> entries =
        analysis::SampleEntries(static_cast<int>(trainer.state().actor.size()), 400, rng);
    const analysis::GradientReport report =
        analysis::CheckPolicyGradient(trainer, opts.horizon, true, 1e-6, entries);
    const double frac = report.FractionWithin(1e-4);
    out.pass = out.pass && frac >= 0.99;
    out.detail += fmt::format("{}episode {}: {:.2f}% of {} entries within 1e-4",
                              stage ? ", " : "", trainer.state().episode, 100 * frac,
                              entries.size());
  }
  return out;
}

Outcome TdLambdaOracle(const Context&) {
  RandomStream rng({2026, 3});
  double worst = 0;
  int with_ends = 0;
  bool limits_exact = true;
  double lambda_one_err = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int h = 1 + static_cast<int>(rng.Uniform(0, 32));
    const int n = 1 + static_cast<int>(rng.Uniform(0, 8));
    Mat r(h, n), v(h, n);
    BoolMat end(h, n);
    const double p_end = trial % 4 == 0 ? 0.0 : rng.Uniform(0.05, 0.5);
    for (int t = 0; t < h; ++t) {
      for (int i = 0; i < n; ++i) {
        r(t, i) = rng.Uniform(-3, 3);
        end(t, i) = rng.Uniform(0, 1) < p_end;
        // a failure carries no value beyond it; a horizon cut keeps its bootstrap
        v(t, i) = end(t, i) && rng.Uniform(0, 1) < 0.5 ? 0.0 : rng.Uniform(-10, 10);
      }
    }
    with_ends += end.any();
    const double gamma = rng.Uniform(0.8, 1.0);
    const double lambda = rng.Uniform(0, 1);
    worst = std::max(worst, (train::TdLambdaTargets(r, v, end, gamma, lambda) -
                             EnumeratedTargets(r, v, end, gamma, lambda))
                                .cwiseAbs()
                                .maxCoeff());

    // one-step closed form
    const Mat zero = train::TdLambdaTargets(r, v, end, gamma, 0.0);
    limits_exact = limits_exact && (zero.array() == (r + gamma * v).array()).all();
    // lambda = 1: discounted rewards to the segment end plus its discounted value
    const Mat one = train::TdLambdaTargets(r, v, end, gamma, 1.0);
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < h; ++t) {
        double g = 0;
        int u = t;
        for (;; ++u) {
          g += std::pow(gamma, u - t) * r(u, i);
          if (end(u, i) || u == h - 1) break;
        }
        g += std::pow(gamma, u - t + 1) * v(u, i);
        lambda_one_err = std::max(lambda_one_err, std::abs(one(t, i) - g) / (1 + std::abs(g)));
      }
    }
  }
  Outcome out;
  out.pass = worst <= 1e-10 && limits_exact && lambda_one_err <= 1e-13;
  out.detail = fmt::format(
      "max |targets - enumeration| {:.1e} over 100 batches ({} with segment ends); "
      "lambda=0 bitwise {}; lambda=1 max rel diff {:.1e}",
      worst, with_ends, limits_exact ? "equal" : "DIFFERENT", lambda_one_err);
  return out;
}

}  // namespace shac::acceptance
