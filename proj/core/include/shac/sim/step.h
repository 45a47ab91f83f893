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

#ifndef SHAC_SIM_STEP_H_
#define SHAC_SIM_STEP_H_

#include <array>

#include "shac/sim/contact.h"
#include "shac/sim/model.h"
#include "shac/sim/types.h"

namespace shac::sim {

struct ContactRecord {
  bool active = false;
  double depth = 0;       // signed gap of the sphere bottom, < 0 when penetrating
  double depth_rate = 0;  // time derivative of depth
  double slip = 0;        // tangential speed of the contact point
  Vec2 normal = Vec2::UnitY();
  FrictionRegime regime = FrictionRegime::kNone;
  double normal_force = 0;
  double tangential_force = 0;
};

// Everything the backward pass needs from one forward step.
struct StepRecord {
  SimState start;
  VecN action;
  double dt = 0;
  VecN qdd;
  VecN bias;
  VecN limit_force;
  MatN cholesky;  // lower factor of the mass matrix
  int num_contacts = 0;
  std::array<ContactRecord, kMaxContacts> contacts;
  std::array<bool, kMaxDof> limit_active{};  // indexed like Model::limits()
  SimState next;
  bool finite = true;
};

struct StepResult {
  SimState next;
  bool finite = true;
};

struct StepAdjoint {
  AdjointState state;
  VecN action;
};

// One semi-implicit Euler step: qdd = M^-1 (c + tau + J^T f + limit forces),
// qd' = qd + dt qdd, q' = q + dt qd'. The action is multiplied by the actuator
// gears and must already be clamped. If record is non-null it receives the
// cached quantities for BackwardStep. Non-finite inputs or outputs are reported
// through StepResult::finite rather than thrown.
StepResult ForwardStep(const Model& model, const SimState& state, const VecN& action,
                       double dt, StepRecord* record = nullptr);

// Exact adjoint of ForwardStep about the recorded step, with every branch
// (contact activity, friction regime, limit activity) frozen as recorded.
// Throws std::invalid_argument if the adjoint does not match the model.
StepAdjoint BackwardStep(const Model& model, const StepRecord& record,
                         const AdjointState& next_adjoint);

}  // namespace shac::sim

#endif  // SHAC_SIM_STEP_H_
