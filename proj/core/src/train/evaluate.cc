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

#include "shac/train/evaluate.h"

#include <cmath>
#include <deque>

namespace shac::train {

EvalResult EvaluatePolicy(std::shared_ptr<const envs::Task> task,
                          const nn::GaussianPolicy& policy, const nn::ParamSet& actor,
                          const nn::RunningNormalizer& normalizer, int rollouts,
                          std::uint64_t seed, std::uint64_t stream, bool deterministic,
                          int tail_steps) {
  const int dof = task->model().dof();
  EvalResult result;
  result.tail_abs_q = Eigen::VectorXd::Zero(dof);
  for (int k = 0; k < rollouts; ++k) {
    envs::EnvInstance env(task, RandomStream({seed, kEvalStreamTag, stream, static_cast<std::uint64_t>(k)}));
    env.Reset();
    double ret = 0;
    int len = 0;
    std::deque<Eigen::VectorXd> tail;
    Eigen::MatrixXd noise(task->action_dim(), 1);
    while (true) {
      const Eigen::MatrixXd obs = normalizer.Apply(env.Observe());
      if (!deterministic) {
        for (int j = 0; j < noise.rows(); ++j) noise(j, 0) = env.rng().Normal();
      }
      const Eigen::MatrixXd action =
          policy.Forward(actor, obs, deterministic ? nullptr : &noise);
      const envs::StepOutcome out = env.Step(action.col(0));
      ret += out.reward;
      ++len;
      tail.push_back(task->CanonicalPositions(env.state()).cwiseAbs());
      if (static_cast<int>(tail.size()) > tail_steps) tail.pop_front();
      if (out.done) break;
    }
    result.returns.push_back(ret);
    result.lengths.push_back(len);
    Eigen::VectorXd mean_tail = Eigen::VectorXd::Zero(dof);
    for (const auto& q : tail) mean_tail += q;
    if (!tail.empty()) mean_tail /= static_cast<double>(tail.size());
    result.tail_abs_q += mean_tail;
  }
  if (rollouts > 0) {
    result.tail_abs_q /= rollouts;
    double sum = 0;
    for (double r : result.returns) sum += r;
    result.mean = sum / rollouts;
    double sq = 0;
    for (double r : result.returns) sq += (r - result.mean) * (r - result.mean);
    result.stddev = std::sqrt(sq / rollouts);
  }
  return result;
}

}  // namespace shac::train
