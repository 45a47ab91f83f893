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

#ifndef SHAC_SIM_CONTACT_H_
#define SHAC_SIM_CONTACT_H_

#include "shac/sim/model.h"
#include "shac/sim/types.h"

namespace shac::sim {

// below this tangential speed (m/s) friction is switched off
inline constexpr double kTangentialEpsilon = 1e-6;

enum class FrictionRegime { kNone, kViscous, kSaturated };

struct ContactForce {
  Vec2 normal_force = Vec2::Zero();  // f_n * n
  double normal = 0;                 // f_n, signed along n
  double tangential = 0;             // along the tangent, opposing v_t
  FrictionRegime regime = FrictionRegime::kNone;
};

// Penalty contact with damped normal response and friction that is viscous
// below the Coulomb cone and saturated on it. d < 0 means penetration, d_rate
// is the time derivative of d, n the unit contact normal, v_t the signed
// tangential speed of the contact point.
ContactForce ComputeContactForce(const ContactParams& params, double d, double d_rate,
                                 const Vec2& n, double v_t);

// Penalty force pushing q back inside [lower, upper]; zero inside.
double JointLimitForce(double k_limit, double q, double lower, double upper);

}  // namespace shac::sim

#endif  // SHAC_SIM_CONTACT_H_
