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

#ifndef SHAC_NN_PARAMS_H_
#define SHAC_NN_PARAMS_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace shac::nn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;

// A named, column-major block of a flat parameter vector.
struct Slice {
  std::string name;
  int offset = 0;
  int rows = 0;
  int cols = 1;
  int size() const { return rows * cols; }
};

// Flat parameter vector with a gradient accumulator of identical shape.
class ParamSet {
 public:
  // reserves rows*cols entries (zero-initialized) and returns the slice index
  int Add(std::string name, int rows, int cols = 1);

  int size() const { return static_cast<int>(values.size()); }
  const std::vector<Slice>& slices() const { return slices_; }
  const Slice& slice(int index) const { return slices_[index]; }
  // index of the slice with this name, or -1
  int Find(std::string_view name) const;

  MatMap Block(int slice) { return Map(values, slice); }
  ConstMatMap Block(int slice) const { return Map(values, slice); }
  MatMap GradBlock(int slice) { return Map(grads, slice); }

  static MatMap Map(Vec& flat, const Slice& s) { return {flat.data() + s.offset, s.rows, s.cols}; }
  static ConstMatMap Map(const Vec& flat, const Slice& s) {
    return {flat.data() + s.offset, s.rows, s.cols};
  }
  MatMap Map(Vec& flat, int slice) const { return Map(flat, slices_[slice]); }
  ConstMatMap Map(const Vec& flat, int slice) const { return Map(flat, slices_[slice]); }

  void ZeroGrad() { grads.setZero(); }
  bool SameLayout(const ParamSet& other) const;

  Vec values;
  Vec grads;

 private:
  std::vector<Slice> slices_;
};

}  // namespace shac::nn

#endif  // SHAC_NN_PARAMS_H_
