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

#include "shac/nn/adam.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "shac/common/log.h"

namespace shac::nn {

double LinearDecay(double lr_start, double lr_end, int episode, int total) {
  if (total <= 0) return lr_start;
  const double frac = std::clamp(static_cast<double>(episode) / total, 0.0, 1.0);
  return lr_start + (lr_end - lr_start) * frac;
}

Adam::Adam(int size, AdamConfig config)
    : first_moment(Vec::Zero(size)), second_moment(Vec::Zero(size)), config_(config) {}

bool Adam::Step(Vec* values, const Vec& grads, double lr) {
  if (grads.size() != values->size() || grads.size() != first_moment.size()) {
    throw std::invalid_argument(fmt::format("adam: {} params, {} grads, {} moments",
                                            values->size(), grads.size(), first_moment.size()));
  }
  if (!grads.allFinite()) {
    log::Warn("non-finite gradient, optimizer step skipped");
    return false;
  }
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  first_moment = b1 * first_moment + (1 - b1) * grads;
  second_moment = b2 * second_moment + (1 - b2) * grads.cwiseAbs2();
  const double c1 = 1 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1 - std::pow(b2, static_cast<double>(t_));
  values->array() -= lr * (first_moment.array() / c1) /
                     ((second_moment.array() / c2).sqrt() + config_.eps);
  return true;
}

}  // namespace shac::nn
