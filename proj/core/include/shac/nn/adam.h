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

#ifndef SHAC_NN_ADAM_H_
#define SHAC_NN_ADAM_H_

#include "shac/nn/params.h"

namespace shac::nn {

struct AdamConfig {
  double beta1 = 0.7;
  double beta2 = 0.95;
  double eps = 1e-8;
};

// Learning rate decayed linearly from lr_start (episode 0) to lr_end
// (episode total).
double LinearDecay(double lr_start, double lr_end, int episode, int total);

// Adam with bias correction. A step whose gradient contains a non-finite
// entry is skipped (returns false, step count unchanged).
class Adam {
 public:
  Adam() = default;
  Adam(int size, AdamConfig config);

  bool Step(Vec* values, const Vec& grads, double lr);

  long step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }

  Vec first_moment;
  Vec second_moment;

  void set_step_count(long t) { t_ = t; }

 private:
  AdamConfig config_;
  long t_ = 0;
};

}  // namespace shac::nn

#endif  // SHAC_NN_ADAM_H_
