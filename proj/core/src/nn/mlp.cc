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

#include "shac/nn/mlp.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>
#include <fmt/core.h>

namespace shac::nn {

double Elu(double x) { return x > 0 ? x : std::expm1(x); }

Mlp::Mlp(const MlpSpec& spec, const std::string& prefix, ParamSet* params) : spec_(spec) {
  if (spec.input_dim < 1 || spec.output_dim < 1) {
    throw std::invalid_argument(fmt::format("{}: input and output dims must be >= 1", prefix));
  }
  int in = spec.input_dim;
  const int num_layers = static_cast<int>(spec.hidden.size()) + 1;
  for (int k = 0; k < num_layers; ++k) {
    const bool last = k + 1 == num_layers;
    const int out = last ? spec.output_dim : spec.hidden[k];
    if (out < 1) throw std::invalid_argument(fmt::format("{}: hidden widths must be >= 1", prefix));
    const std::string name = fmt::format("{}.l{}", prefix, k);
    Layer layer;
    layer.weight = params->Add(name + ".weight", out, in);
    layer.bias = params->Add(name + ".bias", out);
    if (!last) {
      layer.gain = params->Add(name + ".gain", out);
      layer.offset = params->Add(name + ".offset", out);
    }
    layers_.push_back(layer);
    in = out;
  }
}

void OrthogonalInit(MatMap block, double gain, RandomStream& rng) {
  const int rows = static_cast<int>(block.rows());
  const int cols = static_cast<int>(block.cols());
  const int big = std::max(rows, cols);
  const int small = std::min(rows, cols);
  Mat g(big, small);
  for (int j = 0; j < small; ++j) {
    for (int i = 0; i < big; ++i) g(i, j) = rng.Normal();
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(big, small);
  // sign fix makes the distribution uniform over orthogonal matrices
  const Mat r = qr.matrixQR().topRows(small);
  for (int j = 0; j < small; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1;
  }
  if (rows >= cols) {
    block = gain * q;
  } else {
    block = gain * q.transpose();
  }
}

void Mlp::Initialize(ParamSet* params, RandomStream& rng, double hidden_gain,
                     double output_gain) const {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    const bool last = k + 1 == layers_.size();
    OrthogonalInit(params->Block(l.weight), last ? output_gain : hidden_gain, rng);
    params->Block(l.bias).setZero();
    if (!last) {
      params->Block(l.gain).setOnes();
      params->Block(l.offset).setZero();
    }
  }
}

Mat Mlp::Forward(const ParamSet& params, const Vec& values, const Mat& x,
                 MlpTrace* trace) const {
  if (x.rows() != spec_.input_dim) {
    throw std::invalid_argument(
        fmt::format("mlp input has {} rows, expected {}", x.rows(), spec_.input_dim));
  }
  const int batch = static_cast<int>(x.cols());
  const std::size_t num_hidden = layers_.size() - 1;
  if (trace) {
    trace->input = x;
    trace->normalized.resize(num_hidden);
    trace->inv_std.resize(num_hidden);
    trace->hidden.resize(num_hidden);
  }
  Mat h = x;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    Mat z = params.Map(values, l.weight) * h;
    z.colwise() += params.Map(values, l.bias).col(0);
    if (k == num_hidden) {
      h = std::move(z);
      break;
    }
    const int width = static_cast<int>(z.rows());
    Vec inv_std(batch);
    for (int b = 0; b < batch; ++b) {
      auto col = z.col(b);
      const double mean = col.mean();
      col.array() -= mean;
      const double var = col.squaredNorm() / width;
      inv_std[b] = 1.0 / std::sqrt(var + kLayerNormEps);
      col *= inv_std[b];
    }
    const auto gain = params.Map(values, l.gain).col(0);
    const auto offset = params.Map(values, l.offset).col(0);
    Mat y = (z.array().colwise() * gain.array()).colwise() + offset.array();
    y = y.unaryExpr([](double v) { return Elu(v); });
    if (trace) {
      trace->normalized[k] = std::move(z);
      trace->inv_std[k] = std::move(inv_std);
      trace->hidden[k] = y;
    }
    h = std::move(y);
  }
  if (spec_.final_activation == FinalActivation::kTanh) h = h.array().tanh();
  if (trace) trace->output = h;
  return h;
}

Mat Mlp::Backward(const ParamSet& params, const Vec& values, const MlpTrace& trace,
                  const Mat& output_grad, Vec* grads) const {
  Mat g = output_grad;
  if (spec_.final_activation == FinalActivation::kTanh) {
    g.array() *= 1 - trace.output.array().square();
  }
  for (int k = static_cast<int>(layers_.size()) - 1; k >= 0; --k) {
    const Layer& l = layers_[k];
    const Mat& in = k == 0 ? trace.input : trace.hidden[k - 1];
    if (grads) {
      ParamSet::Map(*grads, params.slice(l.weight)).noalias() += g * in.transpose();
      ParamSet::Map(*grads, params.slice(l.bias)).col(0) += g.rowwise().sum();
    }
    g = params.Map(values, l.weight).transpose() * g;
    if (k == 0) break;

    // back through ELU, gain/offset and layernorm of hidden layer k-1
    const int j = k - 1;
    const Layer& hl = layers_[j];
    const Mat& y = trace.hidden[j];
    const Mat& xhat = trace.normalized[j];
    Mat dpre = g.array() * (y.array() > 0).select(1.0, y.array() + 1.0);
    if (grads) {
      ParamSet::Map(*grads, params.slice(hl.gain)).col(0) +=
          (dpre.array() * xhat.array()).rowwise().sum().matrix();
      ParamSet::Map(*grads, params.slice(hl.offset)).col(0) += dpre.rowwise().sum();
    }
    Mat dx = dpre.array().colwise() * params.Map(values, hl.gain).col(0).array();
    const double width = static_cast<double>(dx.rows());
    for (int b = 0; b < dx.cols(); ++b) {
      auto col = dx.col(b);
      const double mean_d = col.sum() / width;
      const double mean_dx = col.dot(xhat.col(b)) / width;
      col = trace.inv_std[j][b] * (col.array() - mean_d - xhat.col(b).array() * mean_dx).matrix();
    }
    g = std::move(dx);
  }
  return g;
}

}  // namespace shac::nn
