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

#include "shac/train/td_lambda.h"

#include <stdexcept>

namespace shac::train {

Mat TdLambdaTargets(const Mat& rewards, const Mat& next_values, const BoolMat& segment_end,
                    double gamma, double lambda) {
  if (rewards.rows() != next_values.rows() || rewards.cols() != next_values.cols() ||
      rewards.rows() != segment_end.rows() || rewards.cols() != segment_end.cols()) {
    throw std::invalid_argument("td-lambda inputs must have identical shapes");
  }
  const int h = static_cast<int>(rewards.rows());
  Mat targets(rewards.rows(), rewards.cols());
  for (int i = 0; i < rewards.cols(); ++i) {
    for (int t = h - 1; t >= 0; --t) {
      const double v = next_values(t, i);
      double tail = v;
      if (t + 1 < h && !segment_end(t, i)) {
        tail = (1 - lambda) * v + lambda * targets(t + 1, i);
      }
      targets(t, i) = rewards(t, i) + gamma * tail;
    }
  }
  return targets;
}

}  // namespace shac::train
