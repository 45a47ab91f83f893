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

#include "shac/nn/params.h"

namespace shac::nn {

int ParamSet::Add(std::string name, int rows, int cols) {
  Slice s{std::move(name), size(), rows, cols};
  const int n = size() + s.size();
  values.conservativeResize(n);
  grads.conservativeResize(n);
  values.tail(s.size()).setZero();
  grads.tail(s.size()).setZero();
  slices_.push_back(std::move(s));
  return static_cast<int>(slices_.size()) - 1;
}

int ParamSet::Find(std::string_view name) const {
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    if (slices_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool ParamSet::SameLayout(const ParamSet& other) const {
  if (slices_.size() != other.slices_.size()) return false;
  for (std::size_t i = 0; i < slices_.size(); ++i) {
    const Slice& a = slices_[i];
    const Slice& b = other.slices_[i];
    if (a.name != b.name || a.offset != b.offset || a.rows != b.rows || a.cols != b.cols) {
      return false;
    }
  }
  return true;
}

}  // namespace shac::nn
