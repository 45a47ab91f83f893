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

#ifndef SHAC_SIM_KINEMATICS_H_
#define SHAC_SIM_KINEMATICS_H_

#include <array>

#include "shac/sim/model.h"
#include "shac/sim/types.h"

namespace shac::sim {

// World-frame placement of every dof frame at a configuration q.
//
// A point fixed to frame b is a sum of rotated segments
//   p = R(angle[b]) r + sum_{k in chain(b)} R(angle[parent(k)]) e_k,
// with e_k = offset_k + axis_k q_k for prismatic frames. Every angle is a sum
// of revolute coordinates, which makes all derivatives below closed-form.
struct Frames {
  int n = 0;
  std::array<double, kMaxDof> angle{};
  std::array<double, kMaxDof> cos{};
  std::array<double, kMaxDof> sin{};
  std::array<Vec2, kMaxDof> origin;
  std::array<Vec2, kMaxDof> segment;     // R(angle[parent]) e_k
  std::array<Vec2, kMaxDof> axis_world;  // R(angle[parent]) axis_k

  Vec2 ToWorld(int body, const Vec2& local) const {
    return Rotate(cos[body], sin[body], local);
  }
};

// Per-frame sum of revolute entries of u along the chain, i.e. the angular
// velocity of each frame when the generalized velocity is u.
using Rates = std::array<double, kMaxDof>;

Frames ComputeFrames(const Model& model, const VecN& q);
Rates ComputeRates(const Model& model, const VecN& u);

Vec2 PointPosition(const Model& model, const Frames& frames, int body,
                   const Vec2& local);
// J(q) u for the point
Vec2 PointVelocity(const Model& model, const Frames& frames, const Rates& u_rates,
                   const VecN& u, int body, const Vec2& local);
// J(q) a + Jdot(q, qd) qd
Vec2 PointAcceleration(const Model& model, const Frames& frames,
                       const Rates& qd_rates, const Rates& a_rates, const VecN& qd,
                       const VecN& a, int body, const Vec2& local);

// Accumulates J(q)^T force into tau.
void AddPointJacobianTranspose(const Model& model, const Frames& frames, int body,
                               const Vec2& local, const Vec2& force, VecN* tau);

// Reverse-mode accumulator for the point kinematics above. Angle adjoints are
// collected per frame and scattered onto revolute coordinates by Finish().
class KinematicsAdjoint {
 public:
  explicit KinematicsAdjoint(int dof);

  // d/dq of bar . PointPosition
  void Position(const Model& model, const Frames& frames, int body,
                const Vec2& local, const Vec2& bar);
  // d/dq of bar . PointVelocity; when u is the state velocity (u_is_qd) the
  // dependence on u is accumulated into dqd as well
  void Velocity(const Model& model, const Frames& frames, const Rates& u_rates,
                const VecN& u, int body, const Vec2& local, const Vec2& bar,
                bool u_is_qd);
  // d/dq and d/dqd of bar . PointAcceleration, with a held fixed
  void Acceleration(const Model& model, const Frames& frames, const Rates& qd_rates,
                    const Rates& a_rates, const VecN& qd, const VecN& a, int body,
                    const Vec2& local, const Vec2& bar);
  // adjoint of the angular rate of a frame under qd
  void AddRate(int body, double bar) { rate_bar_[body] += bar; }

  void Finish(const Model& model);

  VecN dq;
  VecN dqd;

 private:
  std::array<double, kMaxDof> angle_bar_{};
  std::array<double, kMaxDof> rate_bar_{};
};

}  // namespace shac::sim

#endif  // SHAC_SIM_KINEMATICS_H_
