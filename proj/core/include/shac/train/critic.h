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

#ifndef SHAC_TRAIN_CRITIC_H_
#define SHAC_TRAIN_CRITIC_H_

#include <vector>

#include "shac/common/random.h"
#include "shac/nn/adam.h"
#include "shac/nn/mlp.h"
#include "shac/nn/params.h"

namespace shac::train {

using nn::Mat;
using nn::Vec;

// Value network with a slowly blended target copy.
struct Critic {
  Critic() = default;
  Critic(int obs_dim, const std::vector<int>& hidden, nn::AdamConfig adam);

  void Initialize(RandomStream& rng);

  nn::ParamSet params;
  nn::ParamSet target;
  nn::Mlp net;
  nn::Adam adam;
};

struct CriticFitOptions {
  int iterations = 16;
  int minibatches = 4;
  double lr = 5e-4;
};

// Mean squared error over columns of inputs against targets and its gradient
// with respect to the predictions.
double MseLoss(const Vec& predictions, const Vec& targets, Vec* grad);

// Runs options.iterations passes; each shuffles all (input, target) columns
// into options.minibatches groups and takes one Adam step per group. Returns
// the mean minibatch loss of the final pass.
double FitCritic(Critic* critic, const Mat& inputs, const Vec& targets,
                 const CriticFitOptions& options, RandomStream& rng);

// target <- alpha * target + (1 - alpha) * source
void BlendInto(nn::ParamSet* target, const nn::ParamSet& source, double alpha);

}  // namespace shac::train

#endif  // SHAC_TRAIN_CRITIC_H_
