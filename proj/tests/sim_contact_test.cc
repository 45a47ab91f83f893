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

#include <cmath>

#include <gtest/gtest.h>

#include "shac/common/random.h"
#include "shac/sim/contact.h"

namespace shac::sim {
namespace {

ContactParams Params(double k_n, double k_d, double k_t, double mu) {
  ContactParams p;
  p.k_n = k_n;
  p.k_d = k_d;
  p.k_t = k_t;
  p.mu = mu;
  return p;
}

TEST(ContactForce, SeparatedIsZero) {
  const ContactForce f = ComputeContactForce(ContactParams{}, 0.01, -3.0, Vec2::UnitY(), 2.0);
  EXPECT_EQ(f.normal, 0);
  EXPECT_EQ(f.tangential, 0);
  EXPECT_EQ(f.normal_force, Vec2::Zero());
  EXPECT_EQ(f.regime, FrictionRegime::kNone);
}

TEST(ContactForce, PenetratingNormalForce) {
  const ContactForce f = ComputeContactForce(Params(1e4, 1e2, 1, 0.5), -0.01, -0.1,
                                             Vec2::UnitY(), 0);
  EXPECT_NEAR(f.normal_force.norm(), 100.1, 1e-10);
  EXPECT_NEAR(f.normal_force.y(), 100.1, 1e-10);
  EXPECT_EQ(f.tangential, 0);
}

TEST(ContactForce, FrictionSaturatesAtCone) {
  for (double v : {1e3, -1e3}) {
    const ContactForce f = ComputeContactForce(Params(1e4, 1e2, 1, 0.5), -0.01, -0.1,
                                               Vec2::UnitY(), v);
    EXPECT_NEAR(std::abs(f.tangential), 50.05, 1e-10);
    EXPECT_LT(f.tangential * v, 0);
    EXPECT_EQ(f.regime, FrictionRegime::kSaturated);
  }
}

TEST(ContactForce, ViscousBelowCone) {
  const ContactForce f = ComputeContactForce(Params(1e4, 1e2, 1, 0.5), -0.01, -0.1,
                                             Vec2::UnitY(), 2.0);
  EXPECT_NEAR(f.tangential, -2.0, 1e-12);
  EXPECT_EQ(f.regime, FrictionRegime::kViscous);
}

TEST(ContactForce, NoFrictionInsideEpsilonBall) {
  const ContactForce f = ComputeContactForce(ContactParams{}, -0.01, 0, Vec2::UnitY(),
                                             0.5 * kTangentialEpsilon);
  EXPECT_EQ(f.tangential, 0);
  EXPECT_EQ(f.regime, FrictionRegime::kNone);
}

TEST(ContactForce, NormalVanishesAtSurface) {
  const ContactParams p;
  double previous = INFINITY;
  for (double d = -1e-2; d < -1e-12; d /= 10) {
    const double fn = ComputeContactForce(p, d, -1.0, Vec2::UnitY(), 0).normal;
    EXPECT_LT(std::abs(fn), previous);
    previous = std::abs(fn);
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(ContactForce, FrictionContinuousOutsideEpsilonBall) {
  const ContactParams p;
  RandomStream rng({11});
  for (int trial = 0; trial < 1000; ++trial) {
    const double d = rng.Uniform(-0.05, -1e-4);
    const double rate = rng.Uniform(-1, 1);
    double v = rng.Uniform(-5, 5);
    if (std::abs(v) < 10 * kTangentialEpsilon) continue;
    const double h = 1e-9;
    const double a = ComputeContactForce(p, d, rate, Vec2::UnitY(), v).tangential;
    const double b = ComputeContactForce(p, d, rate, Vec2::UnitY(), v + h).tangential;
    EXPECT_LE(std::abs(a - b), p.k_t * h * 1.0001);
  }
}

TEST(ContactForce, DampingDissipatesWhilePenetrating) {
  const ContactParams p;
  RandomStream rng({12});
  for (int trial = 0; trial < 1000; ++trial) {
    const double d = rng.Uniform(-0.05, -1e-6);
    const double rate = rng.Uniform(-2, 2);
    const double fn = ComputeContactForce(p, d, rate, Vec2::UnitY(), 0).normal;
    const double spring = ComputeContactForce(p, d, 0, Vec2::UnitY(), 0).normal;
    // the damping part opposes the penetration rate
    EXPECT_LE((fn - spring) * rate, 0);
  }
}

TEST(JointLimitForce, ZeroInside) {
  EXPECT_EQ(JointLimitForce(1e3, 0.2, -1, 1), 0);
  EXPECT_EQ(JointLimitForce(1e3, 1.0, -1, 1), 0);
  EXPECT_EQ(JointLimitForce(1e3, -1.0, -1, 1), 0);
}

TEST(JointLimitForce, PushesBack) {
  EXPECT_NEAR(JointLimitForce(1e3, 1.1, -1, 1.0), -100, 1e-9);
  EXPECT_NEAR(JointLimitForce(1e3, -1.2, -1, 1.0), 200, 1e-9);
}

TEST(JointLimitForce, ContinuousAtBounds) {
  for (double h = 1e-3; h > 1e-12; h /= 10) {
    EXPECT_LE(std::abs(JointLimitForce(1e3, 1.0 + h, -1, 1.0)), 1e3 * h * 1.0001);
    EXPECT_LE(std::abs(JointLimitForce(1e3, -1.0 - h, -1, 1.0)), 1e3 * h * 1.0001);
  }
}

}  // namespace
}  // namespace shac::sim
