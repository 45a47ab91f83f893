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

#include "shac/train/critic.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace shac::train {

Critic::Critic(int obs_dim, const std::vector<int>& hidden, nn::AdamConfig adam_config)
    : net({obs_dim, hidden, 1, nn::FinalActivation::kNone}, "critic", &params) {
  target = params;
  adam = nn::Adam(params.size(), adam_config);
}

void Critic::Initialize(RandomStream& rng) {
  net.Initialize(&params, rng, std::sqrt(2.0), 1.0);
  target.values = params.values;
}

double MseLoss(const Vec& predictions, const Vec& targets, Vec* grad) {
  const double n = static_cast<double>(predictions.size());
  const Vec diff = predictions - targets;
  if (grad) *grad = 2.0 * diff / n;
  return diff.squaredNorm() / n;
}

double FitCritic(Critic* critic, const Mat& inputs, const Vec& targets,
                 const CriticFitOptions& options, RandomStream& rng) {
  const int total = static_cast<int>(inputs.cols());
  if (targets.size() != total) throw std::invalid_argument("critic fit: size mismatch");
  if (options.minibatches < 1 || options.minibatches > std::max(total, 1)) {
    throw std::invalid_argument(
        fmt::format("critic fit: {} minibatches for {} samples", options.minibatches, total));
  }
  std::vector<int> order(total);
  double last_loss = 0;
  nn::MlpTrace trace;
  for (int it = 0; it < options.iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    double pass_loss = 0;
    for (int b = 0; b < options.minibatches; ++b) {
      const int begin = static_cast<int>(static_cast<long>(total) * b / options.minibatches);
      const int end = static_cast<int>(static_cast<long>(total) * (b + 1) / options.minibatches);
      const int size = end - begin;
      Mat x(inputs.rows(), size);
      Vec y(size);
      for (int k = 0; k < size; ++k) {
        x.col(k) = inputs.col(order[begin + k]);
        y[k] = targets[order[begin + k]];
      }
      const Mat pred = critic->net.Forward(critic->params, x, &trace);
      Vec grad;
      pass_loss += MseLoss(pred.row(0).transpose(), y, &grad);
      critic->params.ZeroGrad();
      critic->net.Backward(critic->params, critic->params.values, trace, grad.transpose(),
                           &critic->params.grads);
      critic->adam.Step(&critic->params.values, critic->params.grads, options.lr);
    }
    last_loss = pass_loss / options.minibatches;
  }
  return last_loss;
}

void BlendInto(nn::ParamSet* target, const nn::ParamSet& source, double alpha) {
  if (target->size() != source.size()) throw std::invalid_argument("blend: size mismatch");
  target->values = alpha * target->values + (1 - alpha) * source.values;
}

}  // namespace shac::train
