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

#include "shac/sim/step.h"

#include <stdexcept>

#include <Eigen/Cholesky>
#include <fmt/core.h>

#include "shac/sim/dynamics.h"
#include "shac/sim/kinematics.h"

namespace shac::sim {
namespace {

const Vec2 kUp = Vec2::UnitY();

bool AllFinite(const SimState& s, const VecN& action) {
  return s.IsFinite() && action.allFinite();
}

}  // namespace

StepResult ForwardStep(const Model& model, const SimState& state, const VecN& action,
                       double dt, StepRecord* record) {
  const int n = model.dof();
  if (!(dt > 0)) throw std::invalid_argument(fmt::format("dt must be positive, got {}", dt));
  if (state.q.size() != n || state.qd.size() != n) {
    throw std::invalid_argument(fmt::format("state has {} coordinates, model has {}",
                                            state.q.size(), n));
  }
  if (action.size() != model.num_actuators()) {
    throw std::invalid_argument(fmt::format("action has {} entries, model has {} actuators",
                                            action.size(), model.num_actuators()));
  }

  StepRecord local;
  StepRecord& rec = record ? *record : local;
  rec.start = state;
  rec.action = action;
  rec.dt = dt;
  rec.num_contacts = static_cast<int>(model.contact_spheres().size());
  rec.limit_active.fill(false);
  if (!AllFinite(state, action)) {
    rec.finite = false;
    rec.next = state;
    return {state, false};
  }

  const MatN mass = MassMatrix(model, state.q);
  rec.bias = BiasForces(model, state.q, state.qd);
  VecN rhs = rec.bias;

  const auto actuators = model.actuators();
  for (std::size_t a = 0; a < actuators.size(); ++a) {
    rhs[actuators[a].dof] += actuators[a].gear * action[a];
  }

  rec.limit_force = VecN::Zero(n);
  const auto limits = model.limits();
  for (std::size_t i = 0; i < limits.size(); ++i) {
    const DofLimit& lim = limits[i];
    const double q = state.q[lim.dof];
    rec.limit_active[i] = q < lim.lower || q > lim.upper;
    rec.limit_force[lim.dof] += JointLimitForce(model.k_limit(), q, lim.lower, lim.upper);
  }
  rhs += rec.limit_force;

  if (rec.num_contacts > 0) {
    const Frames frames = ComputeFrames(model, state.q);
    const Rates rates = ComputeRates(model, state.qd);
    const auto spheres = model.contact_spheres();
    for (int c = 0; c < rec.num_contacts; ++c) {
      const ContactSphere& sphere = spheres[c];
      ContactRecord& cr = rec.contacts[c];
      const Vec2 center = PointPosition(model, frames, sphere.body, sphere.offset);
      const Vec2 vel =
          PointVelocity(model, frames, rates, state.qd, sphere.body, sphere.offset);
      cr.normal = kUp;
      cr.depth = center.y() - sphere.radius - model.ground_height();
      cr.depth_rate = vel.y();
      // the sphere bottom moves with the body, so spin adds to its slip
      cr.slip = vel.x() + sphere.radius * rates[sphere.body];
      cr.active = cr.depth < 0;
      const ContactForce f =
          ComputeContactForce(model.contact(), cr.depth, cr.depth_rate, cr.normal, cr.slip);
      cr.regime = f.regime;
      cr.normal_force = f.normal;
      cr.tangential_force = f.tangential;
      if (!cr.active) continue;
      AddPointJacobianTranspose(model, frames, sphere.body, sphere.offset,
                                Vec2(f.tangential, f.normal), &rhs);
      AddAngularJacobianTranspose(model, sphere.body, sphere.radius * f.tangential, &rhs);
    }
  }

  Eigen::LLT<MatN> llt(mass);
  rec.cholesky = llt.matrixL();
  rec.qdd = llt.solve(rhs);

  StepResult out;
  out.next.qd = state.qd + dt * rec.qdd;
  out.next.q = state.q + dt * out.next.qd;
  out.finite = llt.info() == Eigen::Success && out.next.IsFinite();
  rec.next = out.next;
  rec.finite = out.finite;
  return out;
}

StepAdjoint BackwardStep(const Model& model, const StepRecord& record,
                         const AdjointState& next_adjoint) {
  const int n = model.dof();
  if (next_adjoint.dq.size() != n || next_adjoint.dqd.size() != n ||
      record.start.q.size() != n) {
    throw std::invalid_argument(fmt::format(
        "adjoint/record dimension mismatch: model dof {}, adjoint ({}, {}), record {}", n,
        next_adjoint.dq.size(), next_adjoint.dqd.size(), record.start.q.size()));
  }
  StepAdjoint out{AdjointState::Zero(n), VecN::Zero(model.num_actuators())};
  if (!record.finite) return out;

  const double dt = record.dt;
  const VecN& q = record.start.q;
  const VecN& qd = record.start.qd;

  // q' = q + dt qd', qd' = qd + dt qdd
  const VecN qd_next_bar = next_adjoint.dqd + dt * next_adjoint.dq;
  out.state.dq = next_adjoint.dq;
  out.state.dqd = qd_next_bar;
  VecN lambda = dt * qd_next_bar;
  record.cholesky.triangularView<Eigen::Lower>().solveInPlace(lambda);
  record.cholesky.transpose().triangularView<Eigen::Upper>().solveInPlace(lambda);

  const auto actuators = model.actuators();
  for (std::size_t a = 0; a < actuators.size(); ++a) {
    out.action[a] = actuators[a].gear * lambda[actuators[a].dof];
  }

  // Remaining terms: gradient of lambda . (c + J^T f + limit - M qdd) with
  // lambda and qdd held fixed. The inertial part is written as virtual power,
  //   lambda . (M qdd - c) = sum_b m_b V_b(lambda) . (A_b - g) + I_b w_b(lambda) a_b,
  // where V_b(lambda) is the center-of-mass velocity produced by lambda and
  // A_b the center-of-mass acceleration. The rotational term does not depend
  // on the state.
  const Frames frames = ComputeFrames(model, q);
  const Rates qd_rates = ComputeRates(model, qd);
  const Rates lambda_rates = ComputeRates(model, lambda);
  const Rates qdd_rates = ComputeRates(model, record.qdd);
  KinematicsAdjoint adj(n);
  const Vec2 gravity(0, -model.gravity());
  for (int k = 0; k < n; ++k) {
    const DofBody& b = model.body(k);
    if (b.mass <= 0) continue;
    const Vec2 v = PointVelocity(model, frames, lambda_rates, lambda, k, b.com);
    const Vec2 a = PointAcceleration(model, frames, qd_rates, qdd_rates, qd, record.qdd, k,
                                     b.com);
    adj.Velocity(model, frames, lambda_rates, lambda, k, b.com, -b.mass * (a - gravity),
                 false);
    adj.Acceleration(model, frames, qd_rates, qdd_rates, qd, record.qdd, k, b.com,
                     -b.mass * v);
  }

  const auto spheres = model.contact_spheres();
  const ContactParams& params = model.contact();
  for (int c = 0; c < record.num_contacts; ++c) {
    const ContactRecord& cr = record.contacts[c];
    if (!cr.active) continue;
    const ContactSphere& sphere = spheres[c];
    const Vec2 force(cr.tangential_force, cr.normal_force);
    adj.Velocity(model, frames, lambda_rates, lambda, sphere.body, sphere.offset, force,
                 false);

    const Vec2 v = PointVelocity(model, frames, lambda_rates, lambda, sphere.body,
                                 sphere.offset);
    const double tangential_bar = v.x() + sphere.radius * lambda_rates[sphere.body];
    double normal_bar = v.y();
    double slip_bar = 0;
    if (cr.regime == FrictionRegime::kViscous) {
      slip_bar = -params.k_t * tangential_bar;
    } else if (cr.regime == FrictionRegime::kSaturated) {
      const double slip_sign = cr.slip > 0 ? 1.0 : -1.0;
      const double normal_sign = cr.normal_force > 0 ? 1.0 : (cr.normal_force < 0 ? -1.0 : 0.0);
      normal_bar += tangential_bar * (-slip_sign * params.mu * normal_sign);
    }
    const double depth_bar = normal_bar * (-params.k_n + params.k_d * cr.depth_rate);
    const double rate_bar = normal_bar * params.k_d * cr.depth;

    adj.Position(model, frames, sphere.body, sphere.offset, Vec2(0, depth_bar));
    adj.Velocity(model, frames, qd_rates, qd, sphere.body, sphere.offset,
                 Vec2(slip_bar, rate_bar), true);
    adj.AddRate(sphere.body, sphere.radius * slip_bar);
  }
  adj.Finish(model);

  const auto limits = model.limits();
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (record.limit_active[i]) adj.dq[limits[i].dof] -= model.k_limit() * lambda[limits[i].dof];
  }

  out.state.dq += adj.dq;
  out.state.dqd += adj.dqd;
  return out;
}

}  // namespace shac::sim
