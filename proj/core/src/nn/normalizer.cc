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

#include "shac/nn/normalizer.h"

#include <stdexcept>

namespace shac::nn {

RunningNormalizer::RunningNormalizer(int dim) : mean(Vec::Zero(dim)), var(Vec::Ones(dim)) {}

void RunningNormalizer::Update(const Mat& batch) {
  if (batch.rows() != dim()) throw std::invalid_argument("normalizer: dimension mismatch");
  const double n = static_cast<double>(batch.cols());
  if (n == 0) return;
  const Vec batch_mean = batch.rowwise().mean();
  const Vec batch_var = (batch.colwise() - batch_mean).rowwise().squaredNorm() / n;
  if (count == 0) {
    mean = batch_mean;
    var = batch_var;
    count = n;
    return;
  }
  const double total = count + n;
  const Vec delta = batch_mean - mean;
  mean += delta * (n / total);
  var = (var * count + batch_var * n + delta.cwiseAbs2() * (count * n / total)) / total;
  count = total;
}

Vec RunningNormalizer::Scale() const {
  if (count == 0) return Vec::Ones(dim());
  return (var.array() + kEps).rsqrt();
}

Mat RunningNormalizer::Apply(const Mat& x) const {
  if (count == 0) return x;
  return (x.colwise() - mean).array().colwise() * Scale().array();
}

}  // namespace shac::nn
