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

#ifndef SHAC_NN_POLICY_H_
#define SHAC_NN_POLICY_H_

#include <vector>

#include "shac/nn/mlp.h"

namespace shac::nn {

struct PolicySpec {
  int obs_dim = 1;
  int action_dim = 1;
  std::vector<int> hidden = {64, 64};
  bool state_dependent_std = false;
  double init_log_std = 0;
  double min_log_std = -5;
  double max_log_std = 2;
};

struct PolicyTrace {
  MlpTrace mean;
  MlpTrace std_head;
  Mat log_std;  // clamped, action_dim x batch
  Mat noise;    // empty when deterministic
};

// Diagonal Gaussian policy a = mean(obs) + exp(log_std) * noise with a tanh
// mean head. log_std is a learned vector, or a second network when
// state_dependent_std is set; it is clamped to [min_log_std, max_log_std].
class GaussianPolicy {
 public:
  GaussianPolicy() = default;
  GaussianPolicy(const PolicySpec& spec, ParamSet* params);

  const PolicySpec& spec() const { return spec_; }
  void Initialize(ParamSet* params, RandomStream& rng) const;

  // obs: obs_dim x batch; noise: action_dim x batch, or null for the mean
  Mat Forward(const ParamSet& params, const Mat& obs, const Mat* noise,
              PolicyTrace* trace = nullptr) const;
  // accumulates parameter gradients into params->grads, returns d/d(obs)
  Mat Backward(ParamSet* params, const PolicyTrace& trace, const Mat& action_grad) const;

 private:
  PolicySpec spec_;
  Mlp mean_;
  Mlp std_head_;
  int log_std_ = -1;
};

}  // namespace shac::nn

#endif  // SHAC_NN_POLICY_H_
