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

#include "shac/sim/dynamics.h"

#include <array>
#include <cmath>

namespace shac::sim {
namespace {

// planar spatial vectors are ordered (angular, linear x, linear y)
using Spatial = Eigen::Vector3d;

double Cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// rigid inertia about a frame origin: mass, first moment m*c, rotational
// inertia about the origin
struct Inertia {
  double mass = 0;
  Vec2 moment = Vec2::Zero();
  double rot = 0;

  static Inertia Of(const DofBody& b) {
    return {b.mass, b.mass * b.com, b.inertia + b.mass * b.com.squaredNorm()};
  }
  Spatial operator*(const Spatial& v) const {
    return {rot * v[0] - moment.y() * v[1] + moment.x() * v[2],
            -moment.y() * v[0] + mass * v[1], moment.x() * v[0] + mass * v[2]};
  }
};

// placement of frame k in its parent frame at configuration q
struct Joint {
  double c = 1, s = 0;
  Vec2 r = Vec2::Zero();
};

std::array<Joint, kMaxDof> Placements(const Model& model, const VecN& q) {
  std::array<Joint, kMaxDof> out;
  for (int k = 0; k < model.dof(); ++k) {
    const DofBody& b = model.body(k);
    if (b.revolute) {
      out[k] = {std::cos(q[k]), std::sin(q[k]), b.offset};
    } else {
      out[k] = {1, 0, b.offset + b.axis * q[k]};
    }
  }
  return out;
}

Spatial MotionSubspace(const DofBody& b) {
  return b.revolute ? Spatial(1, 0, 0) : Spatial(0, b.axis.x(), b.axis.y());
}

Spatial ForceToParent(const Joint& j, const Spatial& f) {
  const Vec2 lin = Rotate(j.c, j.s, Vec2(f[1], f[2]));
  return {f[0] + Cross(j.r, lin), lin.x(), lin.y()};
}

Spatial MotionFromParent(const Joint& j, const Spatial& m) {
  const Vec2 lin = Vec2(m[1], m[2]) + m[0] * Perp(j.r);
  const Vec2 local = Rotate(j.c, -j.s, lin);
  return {m[0], local.x(), local.y()};
}

Spatial CrossMotion(const Spatial& v, const Spatial& m) {
  return {0, -v[0] * m[2] + v[2] * m[0], v[0] * m[1] - v[1] * m[0]};
}

Spatial CrossForce(const Spatial& v, const Spatial& f) {
  return {v[1] * f[2] - v[2] * f[1], -v[0] * f[2], v[0] * f[1]};
}

}  // namespace

MatN MassMatrix(const Model& model, const VecN& q) {
  const int n = model.dof();
  const auto joints = Placements(model, q);
  std::array<Inertia, kMaxDof> composite;
  for (int k = 0; k < n; ++k) composite[k] = Inertia::Of(model.body(k));
  for (int k = n - 1; k >= 0; --k) {
    const int p = model.body(k).parent;
    if (p < 0) continue;
    const Joint& j = joints[k];
    const Inertia& ck = composite[k];
    const Vec2 rotated = Rotate(j.c, j.s, ck.moment);
    composite[p].mass += ck.mass;
    composite[p].moment += ck.mass * j.r + rotated;
    composite[p].rot += ck.rot + 2 * j.r.dot(rotated) + ck.mass * j.r.squaredNorm();
  }

  MatN m = MatN::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Spatial f = composite[i] * MotionSubspace(model.body(i));
    m(i, i) = MotionSubspace(model.body(i)).dot(f);
    for (int j = i; model.body(j).parent >= 0;) {
      f = ForceToParent(joints[j], f);
      j = model.body(j).parent;
      m(i, j) = m(j, i) = MotionSubspace(model.body(j)).dot(f);
    }
  }
  return m;
}

VecN InverseDynamics(const Model& model, const VecN& q, const VecN& qd,
                     const VecN& qdd) {
  const int n = model.dof();
  const auto joints = Placements(model, q);
  std::array<Spatial, kMaxDof> vel, acc, force;
  // gravity enters as an upward acceleration of the world frame
  const Spatial base_acc(0, 0, model.gravity());
  for (int k = 0; k < n; ++k) {
    const DofBody& b = model.body(k);
    const Spatial s = MotionSubspace(b);
    const Spatial pv = b.parent >= 0 ? vel[b.parent] : Spatial::Zero();
    const Spatial pa = b.parent >= 0 ? acc[b.parent] : base_acc;
    vel[k] = MotionFromParent(joints[k], pv) + s * qd[k];
    acc[k] = MotionFromParent(joints[k], pa) + s * qdd[k] + CrossMotion(vel[k], s * qd[k]);
    const Inertia inertia = Inertia::Of(b);
    force[k] = inertia * acc[k] + CrossForce(vel[k], inertia * vel[k]);
  }
  VecN tau(n);
  for (int k = n - 1; k >= 0; --k) {
    const DofBody& b = model.body(k);
    tau[k] = MotionSubspace(b).dot(force[k]);
    if (b.parent >= 0) force[b.parent] += ForceToParent(joints[k], force[k]);
  }
  return tau;
}

VecN BiasForces(const Model& model, const VecN& q, const VecN& qd) {
  return -InverseDynamics(model, q, qd, VecN::Zero(model.dof()));
}

void AddAngularJacobianTranspose(const Model& model, int body, double torque, VecN* tau) {
  for (int k = body; k >= 0; k = model.body(k).parent) {
    if (model.body(k).revolute) (*tau)[k] += torque;
  }
}

}  // namespace shac::sim
