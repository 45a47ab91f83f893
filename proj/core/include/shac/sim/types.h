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

#ifndef SHAC_SIM_TYPES_H_
#define SHAC_SIM_TYPES_H_

#include <Eigen/Core>

namespace shac::sim {

// upper bound on generalized coordinates; per-step buffers live on the stack
inline constexpr int kMaxDof = 8;
inline constexpr int kMaxContacts = 8;

using Vec2 = Eigen::Vector2d;
using VecN = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDof, 1>;
using MatN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDof,
                           kMaxDof>;

// generalized coordinates (q) and velocities (qd)
struct SimState {
  VecN q;
  VecN qd;

  static SimState Zero(int dof) {
    return {VecN::Zero(dof), VecN::Zero(dof)};
  }
  bool IsFinite() const { return q.allFinite() && qd.allFinite(); }
  bool operator==(const SimState& other) const {
    return q == other.q && qd == other.qd;
  }
};

// gradient of a scalar loss with respect to a SimState
struct AdjointState {
  VecN dq;
  VecN dqd;

  static AdjointState Zero(int dof) {
    return {VecN::Zero(dof), VecN::Zero(dof)};
  }
  bool IsFinite() const { return dq.allFinite() && dqd.allFinite(); }
};

inline Vec2 Perp(const Vec2& v) { return {-v.y(), v.x()}; }

inline Vec2 Rotate(double c, double s, const Vec2& v) {
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

}  // namespace shac::sim

#endif  // SHAC_SIM_TYPES_H_
