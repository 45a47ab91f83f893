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

#ifndef SHAC_NN_MLP_H_
#define SHAC_NN_MLP_H_

#include <string>
#include <vector>

#include "shac/common/random.h"
#include "shac/nn/params.h"

namespace shac::nn {

enum class FinalActivation { kNone, kTanh };

struct MlpSpec {
  int input_dim = 1;
  std::vector<int> hidden;
  int output_dim = 1;
  FinalActivation final_activation = FinalActivation::kNone;
};

inline constexpr double kLayerNormEps = 1e-5;

double Elu(double x);

// Intermediate values of a batched forward pass, kept for Backward().
struct MlpTrace {
  Mat input;
  std::vector<Mat> normalized;  // layernorm output before gain/offset
  std::vector<Vec> inv_std;     // per sample
  std::vector<Mat> hidden;      // ELU outputs
  Mat output;
};

// Batched multilayer perceptron; samples are columns. Hidden layers are
// linear -> layernorm -> ELU. The network only stores slice indices, so one
// Mlp can evaluate any ParamSet with the same layout (e.g. a target copy).
class Mlp {
 public:
  Mlp() = default;
  // registers "<prefix>.l<k>.{weight,bias,gain,offset}" slices in params
  Mlp(const MlpSpec& spec, const std::string& prefix, ParamSet* params);

  const MlpSpec& spec() const { return spec_; }

  // orthogonal weights scaled by hidden_gain / output_gain, zero biases,
  // unit gains
  void Initialize(ParamSet* params, RandomStream& rng, double hidden_gain,
                  double output_gain) const;

  // x: input_dim x batch. trace may be null.
  Mat Forward(const ParamSet& params, const Vec& values, const Mat& x, MlpTrace* trace) const;
  Mat Forward(const ParamSet& params, const Mat& x, MlpTrace* trace = nullptr) const {
    return Forward(params, params.values, x, trace);
  }

  // Given d(loss)/d(output), returns d(loss)/d(input). Parameter gradients are
  // accumulated into grads when it is non-null.
  Mat Backward(const ParamSet& params, const Vec& values, const MlpTrace& trace,
               const Mat& output_grad, Vec* grads) const;

 private:
  struct Layer {
    int weight = -1, bias = -1, gain = -1, offset = -1;
  };
  MlpSpec spec_;
  std::vector<Layer> layers_;
};

// fills a rows x cols block with a scaled (semi-)orthogonal matrix
void OrthogonalInit(MatMap block, double gain, RandomStream& rng);

}  // namespace shac::nn

#endif  // SHAC_NN_MLP_H_
