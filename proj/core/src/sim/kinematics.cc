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

#include "shac/sim/kinematics.h"

#include <cmath>

namespace shac::sim {
namespace {

// One rotated term of a point expression. angle_body is the frame whose
// angle rotates the term (-1 for the world); dof >= 0 if the term also
// slides along the prismatic coordinate dof with world axis `axis`.
struct Segment {
  int angle_body;
  Vec2 vec;
  int dof;
  Vec2 axis;
};

template <typename Visit>
void ForEachSegment(const Model& model, const Frames& frames, int body,
                    const Vec2& local, Visit&& visit) {
  visit(Segment{body, frames.ToWorld(body, local), -1, Vec2::Zero()});
  for (int k = body; k >= 0; k = model.body(k).parent) {
    const DofBody& b = model.body(k);
    visit(Segment{b.parent, frames.segment[k], b.revolute ? -1 : k, frames.axis_world[k]});
  }
}

double RateOf(const Rates& rates, int body) { return body < 0 ? 0.0 : rates[body]; }

}  // namespace

Frames ComputeFrames(const Model& model, const VecN& q) {
  Frames f;
  f.n = model.dof();
  for (int k = 0; k < f.n; ++k) {
    const DofBody& b = model.body(k);
    double parent_angle = 0, pc = 1, ps = 0;
    Vec2 parent_origin = Vec2::Zero();
    if (b.parent >= 0) {
      parent_angle = f.angle[b.parent];
      pc = f.cos[b.parent];
      ps = f.sin[b.parent];
      parent_origin = f.origin[b.parent];
    }
    Vec2 local = b.offset;
    if (!b.revolute) local += b.axis * q[k];
    f.angle[k] = parent_angle + (b.revolute ? q[k] : 0.0);
    if (b.revolute) {
      f.cos[k] = std::cos(f.angle[k]);
      f.sin[k] = std::sin(f.angle[k]);
    } else {
      f.cos[k] = pc;
      f.sin[k] = ps;
    }
    f.segment[k] = Rotate(pc, ps, local);
    f.axis_world[k] = Rotate(pc, ps, b.axis);
    f.origin[k] = parent_origin + f.segment[k];
  }
  return f;
}

Rates ComputeRates(const Model& model, const VecN& u) {
  Rates r{};
  for (int k = 0; k < model.dof(); ++k) {
    const DofBody& b = model.body(k);
    r[k] = (b.parent >= 0 ? r[b.parent] : 0.0) + (b.revolute ? u[k] : 0.0);
  }
  return r;
}

Vec2 PointPosition(const Model& model, const Frames& frames, int body,
                   const Vec2& local) {
  return frames.origin[body] + frames.ToWorld(body, local);
}

Vec2 PointVelocity(const Model& model, const Frames& frames, const Rates& u_rates,
                   const VecN& u, int body, const Vec2& local) {
  Vec2 v = Vec2::Zero();
  ForEachSegment(model, frames, body, local, [&](const Segment& s) {
    v += RateOf(u_rates, s.angle_body) * Perp(s.vec);
    if (s.dof >= 0) v += s.axis * u[s.dof];
  });
  return v;
}

Vec2 PointAcceleration(const Model& model, const Frames& frames,
                       const Rates& qd_rates, const Rates& a_rates, const VecN& qd,
                       const VecN& a, int body, const Vec2& local) {
  Vec2 acc = Vec2::Zero();
  ForEachSegment(model, frames, body, local, [&](const Segment& s) {
    const double w = RateOf(qd_rates, s.angle_body);
    acc += RateOf(a_rates, s.angle_body) * Perp(s.vec) - w * w * s.vec;
    if (s.dof >= 0) acc += 2 * w * qd[s.dof] * Perp(s.axis) + s.axis * a[s.dof];
  });
  return acc;
}

void AddPointJacobianTranspose(const Model& model, const Frames& frames, int body,
                               const Vec2& local, const Vec2& force, VecN* tau) {
  // moment of the force about each revolute axis accumulates through the
  // chain: the torque on dof k is perp(p - origin_k) . F
  const Vec2 p = PointPosition(model, frames, body, local);
  for (int k = body; k >= 0; k = model.body(k).parent) {
    const DofBody& b = model.body(k);
    if (b.revolute) {
      (*tau)[k] += Perp(p - frames.origin[k]).dot(force);
    } else {
      (*tau)[k] += frames.axis_world[k].dot(force);
    }
  }
}

KinematicsAdjoint::KinematicsAdjoint(int dof)
    : dq(VecN::Zero(dof)), dqd(VecN::Zero(dof)) {}

void KinematicsAdjoint::Position(const Model& model, const Frames& frames, int body,
                                 const Vec2& local, const Vec2& bar) {
  ForEachSegment(model, frames, body, local, [&](const Segment& s) {
    if (s.angle_body >= 0) angle_bar_[s.angle_body] += bar.dot(Perp(s.vec));
    if (s.dof >= 0) dq[s.dof] += bar.dot(s.axis);
  });
}

void KinematicsAdjoint::Velocity(const Model& model, const Frames& frames,
                                 const Rates& u_rates, const VecN& u, int body,
                                 const Vec2& local, const Vec2& bar, bool u_is_qd) {
  ForEachSegment(model, frames, body, local, [&](const Segment& s) {
    const double w = RateOf(u_rates, s.angle_body);
    const double slide = s.dof >= 0 ? u[s.dof] : 0.0;
    if (s.angle_body >= 0) {
      angle_bar_[s.angle_body] += bar.dot(-w * s.vec + slide * Perp(s.axis));
      if (u_is_qd) rate_bar_[s.angle_body] += bar.dot(Perp(s.vec));
    }
    if (s.dof >= 0) {
      dq[s.dof] += w * bar.dot(Perp(s.axis));
      if (u_is_qd) dqd[s.dof] += bar.dot(s.axis);
    }
  });
}

void KinematicsAdjoint::Acceleration(const Model& model, const Frames& frames,
                                     const Rates& qd_rates, const Rates& a_rates,
                                     const VecN& qd, const VecN& a, int body,
                                     const Vec2& local, const Vec2& bar) {
  ForEachSegment(model, frames, body, local, [&](const Segment& s) {
    if (s.angle_body < 0 && s.dof < 0) return;
    const double w = RateOf(qd_rates, s.angle_body);
    const double alpha = RateOf(a_rates, s.angle_body);
    const double slide = s.dof >= 0 ? qd[s.dof] : 0.0;
    const double slide_acc = s.dof >= 0 ? a[s.dof] : 0.0;
    const Vec2 perp_vec = Perp(s.vec);
    const Vec2 perp_axis = Perp(s.axis);
    if (s.angle_body >= 0) {
      angle_bar_[s.angle_body] += bar.dot(-alpha * s.vec - w * w * perp_vec -
                                          2 * w * slide * s.axis + slide_acc * perp_axis);
      rate_bar_[s.angle_body] += bar.dot(-2 * w * s.vec + 2 * slide * perp_axis);
    }
    if (s.dof >= 0) {
      dq[s.dof] += bar.dot(alpha * perp_axis - w * w * s.axis);
      dqd[s.dof] += 2 * w * bar.dot(perp_axis);
    }
  });
}

void KinematicsAdjoint::Finish(const Model& model) {
  for (int k = model.dof() - 1; k >= 0; --k) {
    const DofBody& b = model.body(k);
    if (b.revolute) {
      dq[k] += angle_bar_[k];
      dqd[k] += rate_bar_[k];
    }
    if (b.parent >= 0) {
      angle_bar_[b.parent] += angle_bar_[k];
      rate_bar_[b.parent] += rate_bar_[k];
    }
    angle_bar_[k] = 0;
    rate_bar_[k] = 0;
  }
}

}  // namespace shac::sim
