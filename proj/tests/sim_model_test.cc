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

#include <string>

#include <gtest/gtest.h>

#include "kinematics_oracle.h"
#include "shac/sim/kinematics.h"
#include "shac/sim/model.h"
#include "shac/sim/model_io.h"
#include "test_util.h"

namespace shac::sim {
namespace {

using testing::CartPoleModel;
using testing::HopperModel;

ModelSpec CartPoleSpec() { return envs::CartPole::Spec(envs::CartPole::DefaultConfig()); }
ModelSpec HopperSpec() { return envs::Hopper::Spec(envs::Hopper::DefaultConfig()); }

std::string RejectedField(const ModelSpec& spec) {
  try {
    Model::Build(spec);
  } catch (const ModelError& e) {
    return e.field();
  }
  return "<accepted>";
}

TEST(ModelBuild, CartPoleHasTwoDof) {
  const Model m = CartPoleModel();
  EXPECT_EQ(m.dof(), 2);
  EXPECT_EQ(m.num_actuators(), 1);
}

TEST(ModelBuild, HopperHasSixDof) {
  const Model m = HopperModel();
  EXPECT_EQ(m.dof(), 6);
  EXPECT_EQ(m.num_actuators(), 3);
  EXPECT_EQ(m.contact_spheres().size(), 2u);
  EXPECT_EQ(m.limits().size(), 3u);
}

TEST(ModelBuild, ZeroMassNamesTheLink) {
  ModelSpec spec = CartPoleSpec();
  spec.links[1].mass = 0;
  EXPECT_EQ(RejectedField(spec), "links[1].mass");
  try {
    Model::Build(spec);
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("pole"), std::string::npos);
  }
}

TEST(ModelBuild, RejectsInvalidFields) {
  ModelSpec spec = CartPoleSpec();
  spec.links[0].inertia = -1;
  EXPECT_EQ(RejectedField(spec), "links[0].inertia");

  spec = CartPoleSpec();
  spec.joints[1].parent = 1;
  EXPECT_EQ(RejectedField(spec), "joints[1].parent");

  spec = CartPoleSpec();
  spec.joints[0].limit = JointLimit{1.0, -1.0};
  EXPECT_EQ(RejectedField(spec), "joints[0].limit");

  spec = HopperSpec();
  spec.contact_spheres[0].radius = 0;
  EXPECT_EQ(RejectedField(spec), "contact_spheres[0].radius");

  spec = HopperSpec();
  spec.contact.mu = -0.1;
  EXPECT_EQ(RejectedField(spec), "contact.mu");

  spec = CartPoleSpec();
  spec.joints[0].axis = Vec2::Zero();
  EXPECT_EQ(RejectedField(spec), "joints[0].axis");
}

TEST(ModelIo, RoundTripsThroughText) {
  for (const ModelSpec& spec : {CartPoleSpec(), HopperSpec()}) {
    const std::string text = FormatModelSpec(spec);
    const ModelSpec parsed = ParseModelSpec(text);
    EXPECT_EQ(FormatModelSpec(parsed), text);
    EXPECT_EQ(Model::Build(parsed).dof(), Model::Build(spec).dof());
  }
}

TEST(ModelIo, RejectsUnknownKeys) {
  const std::string text =
      "joints:\n  - {name: a, kind: revolute, parent: -1, springiness: 2}\n"
      "links:\n  - {name: a, mass: 1, inertia: 1}\n";
  try {
    ParseModelSpec(text);
    FAIL() << "accepted an unknown key";
  } catch (const ModelError& e) {
    EXPECT_NE(e.field().find("springiness"), std::string::npos);
  }
}

TEST(ModelIo, ShippedModelFilesMatchBuiltInTasks) {
  const std::string dir = SHAC_MODELS_DIR;
  EXPECT_EQ(FormatModelSpec(LoadModelSpec(dir + "/cartpole.yaml")), FormatModelSpec(CartPoleSpec()));
  EXPECT_EQ(FormatModelSpec(LoadModelSpec(dir + "/hopper.yaml")), FormatModelSpec(HopperSpec()));
}

TEST(Kinematics, CenterOfMassMatchesTransformComposition) {
  RandomStream rng({11});
  for (const ModelSpec& spec : {CartPoleSpec(), HopperSpec()}) {
    const Model model = Model::Build(spec);
    for (int trial = 0; trial < 50; ++trial) {
      const VecN q = testing::RandomVec(model.dof(), 2.0, rng);
      const Frames frames = ComputeFrames(model, q);
      const Eigen::VectorXd oracle = testing::LinkCoordinates(spec, q);
      for (int link = 0; link < model.num_links(); ++link) {
        const int body = model.link_body(link);
        const Vec2 com = PointPosition(model, frames, body, spec.links[link].com);
        EXPECT_NEAR(com.x(), oracle[3 * link], 1e-12);
        EXPECT_NEAR(com.y(), oracle[3 * link + 1], 1e-12);
        EXPECT_NEAR(frames.angle[body], oracle[3 * link + 2], 1e-12);
      }
    }
  }
}

TEST(Kinematics, PointVelocityIsJacobianTimesRate) {
  RandomStream rng({12});
  const ModelSpec spec = HopperSpec();
  const Model model = Model::Build(spec);
  for (int trial = 0; trial < 20; ++trial) {
    const VecN q = testing::RandomVec(6, 1.0, rng);
    const VecN qd = testing::RandomVec(6, 2.0, rng);
    const Frames frames = ComputeFrames(model, q);
    const Rates rates = ComputeRates(model, qd);
    const Vec2 local(0.1, -0.2);
    const int body = model.link_body(3);
    const Vec2 v = PointVelocity(model, frames, rates, qd, body, local);
    const auto position = [&](const Eigen::VectorXd& x) {
      const Vec2 p = PointPosition(model, ComputeFrames(model, x), body, local);
      return Eigen::VectorXd(p);
    };
    Eigen::Vector2d fd = Eigen::Vector2d::Zero();
    for (int i = 0; i < 6; ++i) {
      fd += testing::FivePointDerivative(position, Eigen::VectorXd(q), i, 1e-3) * qd[i];
    }
    EXPECT_LT((v - fd).norm(), 1e-9 * (1 + v.norm()));
  }
}

}  // namespace
}  // namespace shac::sim
