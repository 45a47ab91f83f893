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

#include "shac/sim/model.h"

#include <cmath>
#include <string>

#include <fmt/core.h>

namespace shac::sim {
namespace {

bool Positive(double x) { return std::isfinite(x) && x > 0; }
bool NonNegative(double x) { return std::isfinite(x) && x >= 0; }

std::string Field(const char* group, int index, const char* name) {
  return fmt::format("{}[{}].{}", group, index, name);
}

}  // namespace

Model Model::Build(const ModelSpec& spec) {
  Model model;
  model.spec_ = spec;

  const int num_joints = static_cast<int>(spec.joints.size());
  if (num_joints == 0) throw ModelError("joints", "model has no joints");
  if (static_cast<int>(spec.links.size()) != num_joints) {
    throw ModelError("links", fmt::format("expected {} links (one per joint), got {}",
                                          num_joints, spec.links.size()));
  }
  if (!NonNegative(spec.gravity)) throw ModelError("gravity", "must be finite and >= 0");
  if (!NonNegative(spec.k_limit)) throw ModelError("k_limit", "must be >= 0");
  if (!NonNegative(spec.contact.k_n)) throw ModelError("contact.k_n", "must be >= 0");
  if (!NonNegative(spec.contact.k_d)) throw ModelError("contact.k_d", "must be >= 0");
  if (!NonNegative(spec.contact.k_t)) throw ModelError("contact.k_t", "must be >= 0");
  if (!NonNegative(spec.contact.mu)) throw ModelError("contact.mu", "must be >= 0");

  for (int i = 0; i < num_joints; ++i) {
    const LinkSpec& link = spec.links[i];
    if (!Positive(link.mass)) {
      throw ModelError(Field("links", i, "mass"),
                       fmt::format("link '{}' must have positive mass", link.name));
    }
    if (!Positive(link.inertia)) {
      throw ModelError(Field("links", i, "inertia"),
                       fmt::format("link '{}' must have positive inertia", link.name));
    }
    if (!link.com.allFinite()) throw ModelError(Field("links", i, "com"), "not finite");
  }

  model.joint_dof_.resize(num_joints);
  model.link_body_.resize(num_joints);
  for (int i = 0; i < num_joints; ++i) {
    const JointSpec& joint = spec.joints[i];
    if (joint.parent < -1 || joint.parent >= i) {
      throw ModelError(Field("joints", i, "parent"),
                       fmt::format("parent {} violates tree order (must be in [-1, {}))",
                                   joint.parent, i));
    }
    if (!joint.offset.allFinite()) throw ModelError(Field("joints", i, "offset"), "not finite");
    const int parent_body = joint.parent < 0 ? -1 : model.link_body_[joint.parent];
    model.joint_dof_[i] = model.dof();

    DofBody body;
    switch (joint.kind) {
      case JointKind::kRevolute:
        body.parent = parent_body;
        body.revolute = true;
        body.offset = joint.offset;
        model.bodies_.push_back(body);
        break;
      case JointKind::kPrismatic: {
        const double norm = joint.axis.norm();
        if (!std::isfinite(norm) || norm < 1e-12) {
          throw ModelError(Field("joints", i, "axis"), "prismatic axis must be non-zero");
        }
        body.parent = parent_body;
        body.revolute = false;
        body.axis = joint.axis / norm;
        body.offset = joint.offset;
        model.bodies_.push_back(body);
        break;
      }
      case JointKind::kFreePlanar: {
        if (joint.limit) {
          throw ModelError(Field("joints", i, "limit"),
                           "limits are only supported on single-dof joints");
        }
        DofBody x;
        x.parent = parent_body;
        x.axis = Vec2::UnitX();
        x.offset = joint.offset;
        model.bodies_.push_back(x);
        DofBody y;
        y.parent = model.dof() - 1;
        y.axis = Vec2::UnitY();
        model.bodies_.push_back(y);
        DofBody theta;
        theta.parent = model.dof() - 1;
        theta.revolute = true;
        model.bodies_.push_back(theta);
        break;
      }
    }
    if (model.dof() > kMaxDof) {
      throw ModelError(Field("joints", i, "kind"),
                       fmt::format("model exceeds {} degrees of freedom", kMaxDof));
    }

    const int carrier = model.dof() - 1;
    model.link_body_[i] = carrier;
    DofBody& owner = model.bodies_[carrier];
    owner.mass = spec.links[i].mass;
    owner.inertia = spec.links[i].inertia;
    owner.com = spec.links[i].com;
    owner.link = i;

    if (joint.limit) {
      if (!(joint.limit->lower < joint.limit->upper)) {
        throw ModelError(Field("joints", i, "limit"),
                         fmt::format("lower bound {} must be below upper bound {}",
                                     joint.limit->lower, joint.limit->upper));
      }
      model.limits_.push_back({carrier, joint.limit->lower, joint.limit->upper});
    }
  }

  for (int c = 0; c < static_cast<int>(spec.contact_spheres.size()); ++c) {
    const ContactSphereSpec& sphere = spec.contact_spheres[c];
    if (sphere.link < 0 || sphere.link >= num_joints) {
      throw ModelError(Field("contact_spheres", c, "link"), "no such link");
    }
    if (!Positive(sphere.radius)) {
      throw ModelError(Field("contact_spheres", c, "radius"), "must be positive");
    }
    model.spheres_.push_back({model.link_body_[sphere.link], sphere.offset, sphere.radius});
  }
  if (static_cast<int>(model.spheres_.size()) > kMaxContacts) {
    throw ModelError("contact_spheres", fmt::format("at most {} spheres", kMaxContacts));
  }

  for (int a = 0; a < static_cast<int>(spec.actuators.size()); ++a) {
    const ActuatorSpec& act = spec.actuators[a];
    if (act.joint < 0 || act.joint >= num_joints) {
      throw ModelError(Field("actuators", a, "joint"), "no such joint");
    }
    if (spec.joints[act.joint].kind == JointKind::kFreePlanar) {
      throw ModelError(Field("actuators", a, "joint"), "free-planar joints are unactuated");
    }
    if (!std::isfinite(act.gear)) throw ModelError(Field("actuators", a, "gear"), "not finite");
    model.actuators_.push_back({model.joint_dof_[act.joint], act.gear});
  }
  return model;
}

}  // namespace shac::sim
