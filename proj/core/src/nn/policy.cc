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

#include "shac/nn/policy.h"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace shac::nn {

GaussianPolicy::GaussianPolicy(const PolicySpec& spec, ParamSet* params) : spec_(spec) {
  if (!(spec.min_log_std < spec.max_log_std)) {
    throw std::invalid_argument("policy log-std bounds must satisfy min < max");
  }
  mean_ = Mlp({spec.obs_dim, spec.hidden, spec.action_dim, FinalActivation::kTanh},
              "actor.mean", params);
  if (spec.state_dependent_std) {
    std_head_ = Mlp({spec.obs_dim, spec.hidden, spec.action_dim, FinalActivation::kNone},
                    "actor.log_std", params);
  } else {
    log_std_ = params->Add("actor.log_std", spec.action_dim);
  }
}

void GaussianPolicy::Initialize(ParamSet* params, RandomStream& rng) const {
  mean_.Initialize(params, rng, std::sqrt(2.0), 0.01);
  if (spec_.state_dependent_std) {
    std_head_.Initialize(params, rng, std::sqrt(2.0), 0.01);
    // start every sample at init_log_std through the output bias
    params->Block(params->Find("actor.log_std.l" + std::to_string(spec_.hidden.size()) + ".bias"))
        .setConstant(spec_.init_log_std);
  } else {
    params->Block(log_std_).setConstant(spec_.init_log_std);
  }
}

Mat GaussianPolicy::Forward(const ParamSet& params, const Mat& obs, const Mat* noise,
                            PolicyTrace* trace) const {
  const int batch = static_cast<int>(obs.cols());
  Mat action = mean_.Forward(params, params.values, obs, trace ? &trace->mean : nullptr);
  if (!noise) {
    if (trace) trace->noise.resize(0, 0);
    return action;
  }
  if (noise->rows() != spec_.action_dim || noise->cols() != batch) {
    throw std::invalid_argument(fmt::format("noise must be {}x{}", spec_.action_dim, batch));
  }
  Mat log_std;
  if (spec_.state_dependent_std) {
    log_std = std_head_.Forward(params, params.values, obs, trace ? &trace->std_head : nullptr);
  } else {
    log_std = params.Map(params.values, log_std_).col(0).replicate(1, batch);
  }
  log_std = log_std.cwiseMax(spec_.min_log_std).cwiseMin(spec_.max_log_std);
  action.array() += log_std.array().exp() * noise->array();
  if (trace) {
    trace->log_std = log_std;
    trace->noise = *noise;
  }
  return action;
}

Mat GaussianPolicy::Backward(ParamSet* params, const PolicyTrace& trace,
                             const Mat& action_grad) const {
  Mat obs_grad = mean_.Backward(*params, params->values, trace.mean, action_grad, &params->grads);
  if (trace.noise.size() == 0) return obs_grad;

  // d a / d log_std = exp(log_std) * noise inside the clamp, 0 outside
  Mat g = action_grad.array() * trace.log_std.array().exp() * trace.noise.array();
  const double lo = spec_.min_log_std, hi = spec_.max_log_std;
  g = (trace.log_std.array() > lo && trace.log_std.array() < hi).select(g, 0.0);
  if (spec_.state_dependent_std) {
    obs_grad += std_head_.Backward(*params, params->values, trace.std_head, g, &params->grads);
  } else {
    params->GradBlock(log_std_).col(0) += g.rowwise().sum();
  }
  return obs_grad;
}

}  // namespace shac::nn
