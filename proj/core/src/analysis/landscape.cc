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

#include "shac/analysis/landscape.h"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace shac::analysis {
namespace {

void CheckIncreasing(const std::vector<double>& deltas, const char* what) {
  if (deltas.empty()) throw std::invalid_argument(fmt::format("{} must not be empty", what));
  for (size_t k = 0; k < deltas.size(); ++k) {
    if (!std::isfinite(deltas[k])) throw std::invalid_argument(fmt::format("{} must be finite", what));
    if (k > 0 && !(deltas[k] > deltas[k - 1])) {
      throw std::invalid_argument(fmt::format("{} must be strictly increasing", what));
    }
  }
}

}  // namespace

std::string_view LossEvaluatorName(LossEvaluator evaluator) {
  return evaluator == LossEvaluator::kFull ? "full" : "surrogate";
}

LossEvaluator ParseLossEvaluator(std::string_view name) {
  if (name == "full") return LossEvaluator::kFull;
  if (name == "surrogate") return LossEvaluator::kSurrogate;
  throw std::invalid_argument(fmt::format("unknown evaluator '{}' (full, surrogate)", name));
}

int ResolveWeight(const nn::ParamSet& actor, const WeightId& weight) {
  const int s = actor.Find(weight.slice);
  if (s < 0) throw std::invalid_argument(fmt::format("actor has no parameter '{}'", weight.slice));
  const nn::Slice& slice = actor.slice(s);
  if (weight.index < 0 || weight.index >= slice.size()) {
    throw std::invalid_argument(fmt::format("index {} out of range for '{}' ({} entries)",
                                            weight.index, weight.slice, slice.size()));
  }
  return slice.offset + weight.index;
}

std::string FormatWeight(const WeightId& weight) {
  return fmt::format("{}[{}]", weight.slice, weight.index);
}

WeightId SampleWeight(const nn::ParamSet& actor, RandomStream& rng) {
  std::uniform_int_distribution<int> pick(0, actor.size() - 1);
  const int flat = pick(rng.engine());
  for (const nn::Slice& s : actor.slices()) {
    if (flat >= s.offset && flat < s.offset + s.size()) return {s.name, flat - s.offset};
  }
  throw std::logic_error("parameter slices do not cover the actor");
}

double EvaluateLoss(const train::Trainer& trainer, const Vec& actor_values,
                    LossEvaluator evaluator, int trajectories, std::uint64_t seed) {
  if (trajectories <= 0) throw std::invalid_argument("trajectories must be positive");
  const envs::Task& task = trainer.task();
  const train::TrainOptions& opts = trainer.options();
  const train::TrainerState& st = trainer.state();
  const bool surrogate = evaluator == LossEvaluator::kSurrogate;
  const int steps = surrogate ? opts.horizon : task.horizon();

  nn::ParamSet actor = st.actor;
  actor.values = actor_values;

  std::vector<envs::EnvInstance> envs;
  envs.reserve(trajectories);
  for (int i = 0; i < trajectories; ++i) {
    envs.emplace_back(trainer.task_ptr(),
                      RandomStream({seed, kLandscapeStreamTag, static_cast<std::uint64_t>(i)}));
    envs.back().Reset();
  }
  std::vector<char> alive(trajectories, 1);
  std::vector<char> failed(trajectories, 0);
  Vec returns = Vec::Zero(trajectories);
  const int act_dim = task.action_dim();
  Eigen::MatrixXd obs(task.obs_dim(), trajectories);
  Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(act_dim, trajectories);
  double discount = 1;
  int remaining = trajectories;
  for (int t = 0; t < steps && remaining > 0; ++t) {
    for (int i = 0; i < trajectories; ++i) {
      if (!alive[i]) continue;
      obs.col(i) = st.normalizer.Apply(envs[i].Observe());
      if (!opts.deterministic_policy) {
        for (int j = 0; j < act_dim; ++j) noise(j, i) = envs[i].rng().Normal();
      }
    }
    const Eigen::MatrixXd actions = trainer.policy().Forward(
        actor, obs, opts.deterministic_policy ? nullptr : &noise);
    for (int i = 0; i < trajectories; ++i) {
      if (!alive[i]) continue;
      const envs::StepOutcome out = envs[i].Step(actions.col(i));
      returns[i] += discount * out.reward;
      if (out.done) {
        alive[i] = 0;
        failed[i] = out.reason == envs::DoneReason::kFailure;
        --remaining;
      }
    }
    discount *= opts.gamma;
  }

  if (surrogate) {
    // value of the state each surviving trajectory ended in, discounted by
    // the number of steps it took
    const train::Critic& critic = st.critic;
    for (int i = 0; i < trajectories; ++i) {
      if (failed[i]) continue;
      const int taken = envs[i].steps_since_reset();
      const Eigen::MatrixXd x = st.normalizer.Apply(envs[i].Observe());
      const double v = critic.net.Forward(critic.target, x)(0, 0);
      returns[i] += std::pow(opts.gamma, taken) * v;
    }
  }
  return -returns.mean();
}

LandscapeScan ScanWeight(const train::Trainer& trainer, const WeightId& weight,
                         const std::vector<double>& deltas, LossEvaluator evaluator,
                         int trajectories, std::uint64_t seed) {
  const int flat = ResolveWeight(trainer.state().actor, weight);
  CheckIncreasing(deltas, "deltas");
  LandscapeScan scan;
  scan.weight = weight;
  scan.deltas = deltas;
  scan.evaluator = evaluator;
  scan.trajectories = trajectories;
  scan.seed = seed;
  const Vec& base = trainer.state().actor.values;
  for (double delta : deltas) {
    Vec values = base;
    values[flat] += delta;
    scan.losses.push_back(EvaluateLoss(trainer, values, evaluator, trajectories, seed));
  }
  return scan;
}

Eigen::MatrixXd ScanPlane(const train::Trainer& trainer, const Vec& dir_a, const Vec& dir_b,
                          const std::vector<double>& deltas_a,
                          const std::vector<double>& deltas_b, LossEvaluator evaluator,
                          int trajectories, std::uint64_t seed) {
  const Vec& base = trainer.state().actor.values;
  if (dir_a.size() != base.size() || dir_b.size() != base.size()) {
    throw std::invalid_argument("scan directions must match the actor size");
  }
  CheckIncreasing(deltas_a, "deltas_a");
  CheckIncreasing(deltas_b, "deltas_b");
  Eigen::MatrixXd losses(deltas_a.size(), deltas_b.size());
  for (size_t a = 0; a < deltas_a.size(); ++a) {
    for (size_t b = 0; b < deltas_b.size(); ++b) {
      const Vec values = base + deltas_a[a] * dir_a + deltas_b[b] * dir_b;
      losses(a, b) = EvaluateLoss(trainer, values, evaluator, trajectories, seed);
    }
  }
  return losses;
}

Vec RandomDirection(const nn::ParamSet& actor, RandomStream& rng) {
  Vec dir(actor.size());
  for (int k = 0; k < dir.size(); ++k) dir[k] = rng.Normal();
  for (const nn::Slice& s : actor.slices()) {
    auto d = dir.segment(s.offset, s.size());
    const double target = actor.values.segment(s.offset, s.size()).norm();
    const double norm = d.norm();
    if (norm > 0) d *= target / norm;
  }
  return dir;
}

double TotalVariation(const std::vector<double>& values) {
  double tv = 0;
  for (size_t k = 1; k < values.size(); ++k) tv += std::abs(values[k] - values[k - 1]);
  return tv;
}

std::vector<double> Linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
  return out;
}

}  // namespace shac::analysis
