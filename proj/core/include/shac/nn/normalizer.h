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

#ifndef SHAC_NN_NORMALIZER_H_
#define SHAC_NN_NORMALIZER_H_

#include "shac/nn/params.h"

namespace shac::nn {

// Per-dimension running mean and (population) variance, merged batch by
// batch with the parallel-variance formula. With no data it is the identity.
class RunningNormalizer {
 public:
  static constexpr double kEps = 1e-5;

  RunningNormalizer() = default;
  explicit RunningNormalizer(int dim);

  int dim() const { return static_cast<int>(mean.size()); }

  // samples are columns
  void Update(const Mat& batch);
  Mat Apply(const Mat& x) const;
  // d(normalized)/d(x), per dimension
  Vec Scale() const;

  Vec mean;
  Vec var;
  double count = 0;
};

}  // namespace shac::nn

#endif  // SHAC_NN_NORMALIZER_H_
