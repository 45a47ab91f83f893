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

#ifndef SHAC_SIM_MODEL_H_
#define SHAC_SIM_MODEL_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shac/sim/types.h"

namespace shac::sim {

enum class JointKind { kPrismatic, kRevolute, kFreePlanar };

struct JointLimit {
  double lower = 0;
  double upper = 0;
};

// Joint i connects link i to its parent link (-1 for the world). Offsets and
// axes are expressed in the parent link frame. A free-planar joint has three
// coordinates (x, y, angle) measured in the parent frame.
struct JointSpec {
  std::string name;
  JointKind kind = JointKind::kRevolute;
  int parent = -1;
  Vec2 axis = Vec2::UnitX();  // prismatic only
  Vec2 offset = Vec2::Zero();
  std::optional<JointLimit> limit;  // single-dof joints only
};

struct LinkSpec {
  std::string name;
  double mass = 1;
  double inertia = 1;  // about the center of mass (kg m^2)
  Vec2 com = Vec2::Zero();
};

struct ContactSphereSpec {
  int link = 0;
  Vec2 offset = Vec2::Zero();
  double radius = 0.05;
};

struct ContactParams {
  double k_n = 1e4;  // N/m
  double k_d = 1e2;  // N s/m^2
  double k_t = 1e3;  // N s/m
  double mu = 0.9;
};

struct ActuatorSpec {
  int joint = 0;
  double gear = 1;  // generalized force per unit of action
};

struct ModelSpec {
  std::vector<JointSpec> joints;
  std::vector<LinkSpec> links;
  std::vector<ContactSphereSpec> contact_spheres;
  std::vector<ActuatorSpec> actuators;
  ContactParams contact;
  double k_limit = 1e3;
  double gravity = 9.81;
  double ground_height = 0;
};

// Raised by Model::Build; field() names the offending entry, e.g.
// "links[2].mass".
class ModelError : public std::invalid_argument {
 public:
  ModelError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// One rigid frame per degree of freedom. Free-planar joints expand into a
// prismatic-x, prismatic-y, revolute chain; the intermediate frames are
// massless. Bodies are stored in tree order (parent < child).
struct DofBody {
  int parent = -1;
  bool revolute = false;
  Vec2 axis = Vec2::UnitX();
  Vec2 offset = Vec2::Zero();
  double mass = 0;
  double inertia = 0;
  Vec2 com = Vec2::Zero();
  int link = -1;  // link whose inertia this frame carries, or -1
};

struct ContactSphere {
  int body = 0;
  Vec2 offset = Vec2::Zero();
  double radius = 0;
};

struct DofLimit {
  int dof = 0;
  double lower = 0;
  double upper = 0;
};

struct Actuator {
  int dof = 0;
  double gear = 1;
};

// Validated articulated model. Read-only after Build, so instances can be
// shared across environments and threads.
class Model {
 public:
  static Model Build(const ModelSpec& spec);

  int dof() const { return static_cast<int>(bodies_.size()); }
  int num_links() const { return static_cast<int>(spec_.links.size()); }
  int num_actuators() const { return static_cast<int>(actuators_.size()); }

  std::span<const DofBody> bodies() const { return bodies_; }
  const DofBody& body(int i) const { return bodies_[i]; }
  std::span<const ContactSphere> contact_spheres() const { return spheres_; }
  std::span<const DofLimit> limits() const { return limits_; }
  std::span<const Actuator> actuators() const { return actuators_; }

  // first generalized coordinate of a joint
  int joint_dof(int joint) const { return joint_dof_[joint]; }
  // frame carrying a link's inertia
  int link_body(int link) const { return link_body_[link]; }

  const ContactParams& contact() const { return spec_.contact; }
  double k_limit() const { return spec_.k_limit; }
  double gravity() const { return spec_.gravity; }
  double ground_height() const { return spec_.ground_height; }
  const ModelSpec& spec() const { return spec_; }

 private:
  ModelSpec spec_;
  std::vector<DofBody> bodies_;
  std::vector<ContactSphere> spheres_;
  std::vector<DofLimit> limits_;
  std::vector<Actuator> actuators_;
  std::vector<int> joint_dof_;
  std::vector<int> link_body_;
};

}  // namespace shac::sim

#endif  // SHAC_SIM_MODEL_H_
