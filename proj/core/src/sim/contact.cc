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

#include "shac/sim/contact.h"

#include <algorithm>
#include <cmath>

namespace shac::sim {

ContactForce ComputeContactForce(const ContactParams& params, double d, double d_rate,
                                 const Vec2& n, double v_t) {
  ContactForce out;
  if (!(d < 0)) return out;
  out.normal = (-params.k_n + params.k_d * d_rate) * d;
  out.normal_force = out.normal * n;
  const double speed = std::abs(v_t);
  if (speed < kTangentialEpsilon) return out;
  const double viscous = params.k_t * speed;
  const double cone = params.mu * std::abs(out.normal);
  const double sign = v_t > 0 ? 1.0 : -1.0;
  if (viscous <= cone) {
    out.tangential = -sign * viscous;
    out.regime = FrictionRegime::kViscous;
  } else {
    out.tangential = -sign * cone;
    out.regime = FrictionRegime::kSaturated;
  }
  return out;
}

double JointLimitForce(double k_limit, double q, double lower, double upper) {
  if (q < lower) return k_limit * (lower - q);
  if (q > upper) return k_limit * (upper - q);
  return 0;
}

}  // namespace shac::sim
