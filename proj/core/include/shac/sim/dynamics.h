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

#ifndef SHAC_SIM_DYNAMICS_H_
#define SHAC_SIM_DYNAMICS_H_

#include "shac/sim/kinematics.h"
#include "shac/sim/model.h"
#include "shac/sim/types.h"

namespace shac::sim {

// Joint-space inertia matrix via the composite rigid body algorithm.
MatN MassMatrix(const Model& model, const VecN& q);

// Generalized bias force c(q, qd) = -(Coriolis + centrifugal + gravity)
// computed by recursive Newton-Euler with zero joint acceleration, so that
// M qdd = c + tau holds for the unforced system.
VecN BiasForces(const Model& model, const VecN& q, const VecN& qd);

// Inverse dynamics ID(q, qd, qdd) = M qdd - c; used by the adjoint and tests.
VecN InverseDynamics(const Model& model, const VecN& q, const VecN& qd, const VecN& qdd);

// Adds tau_k += torque for every revolute ancestor of body (inclusive), i.e.
// the transpose of the body's angular-velocity Jacobian.
void AddAngularJacobianTranspose(const Model& model, int body, double torque, VecN* tau);

}  // namespace shac::sim

#endif  // SHAC_SIM_DYNAMICS_H_
