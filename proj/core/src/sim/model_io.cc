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

#include "shac/sim/model_io.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/core.h>
#include <yaml-cpp/yaml.h>

namespace shac::sim {
namespace {

void CheckKeys(const YAML::Node& node, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw ModelError(where, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) {
      throw ModelError(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

template <typename T>
T Get(const YAML::Node& node, const char* key, const std::string& where, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ModelError(where.empty() ? key : where + "." + key, "wrong value type");
  }
}

Vec2 GetVec2(const YAML::Node& node, const char* key, const std::string& where,
             const Vec2& fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  const std::string field = where + "." + key;
  if (!v.IsSequence() || v.size() != 2) throw ModelError(field, "expected [x, y]");
  try {
    return {v[0].as<double>(), v[1].as<double>()};
  } catch (const YAML::Exception&) {
    throw ModelError(field, "expected numbers");
  }
}

JointKind ParseKind(const std::string& text, const std::string& field) {
  if (text == "prismatic") return JointKind::kPrismatic;
  if (text == "revolute") return JointKind::kRevolute;
  if (text == "free_planar") return JointKind::kFreePlanar;
  throw ModelError(field, fmt::format("unknown joint kind '{}'", text));
}

const char* KindName(JointKind kind) {
  switch (kind) {
    case JointKind::kPrismatic: return "prismatic";
    case JointKind::kRevolute: return "revolute";
    case JointKind::kFreePlanar: return "free_planar";
  }
  return "revolute";
}

std::string Indexed(const char* group, std::size_t i) { return fmt::format("{}[{}]", group, i); }

YAML::Node Seq(const Vec2& v) {
  YAML::Node n(YAML::NodeType::Sequence);
  n.SetStyle(YAML::EmitterStyle::Flow);
  n.push_back(v.x());
  n.push_back(v.y());
  return n;
}

}  // namespace

ModelSpec ParseModelSpec(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ModelError("", fmt::format("malformed model file: {}", e.what()));
  }
  ModelSpec spec;
  if (root.IsNull()) return spec;
  CheckKeys(root, "", {"gravity", "ground_height", "k_limit", "contact", "joints", "links",
                       "contact_spheres", "actuators"});
  spec.gravity = Get(root, "gravity", "", spec.gravity);
  spec.ground_height = Get(root, "ground_height", "", spec.ground_height);
  spec.k_limit = Get(root, "k_limit", "", spec.k_limit);
  if (const YAML::Node c = root["contact"]) {
    CheckKeys(c, "contact", {"k_n", "k_d", "k_t", "mu"});
    spec.contact.k_n = Get(c, "k_n", "contact", spec.contact.k_n);
    spec.contact.k_d = Get(c, "k_d", "contact", spec.contact.k_d);
    spec.contact.k_t = Get(c, "k_t", "contact", spec.contact.k_t);
    spec.contact.mu = Get(c, "mu", "contact", spec.contact.mu);
  }
  const YAML::Node joints = root["joints"];
  for (std::size_t i = 0; joints && i < joints.size(); ++i) {
    const std::string where = Indexed("joints", i);
    const YAML::Node j = joints[i];
    CheckKeys(j, where, {"name", "kind", "parent", "axis", "offset", "limit"});
    JointSpec js;
    js.name = Get<std::string>(j, "name", where, "");
    js.kind = ParseKind(Get<std::string>(j, "kind", where, "revolute"), where + ".kind");
    js.parent = Get(j, "parent", where, -1);
    js.axis = GetVec2(j, "axis", where, js.axis);
    js.offset = GetVec2(j, "offset", where, js.offset);
    if (j["limit"]) {
      const Vec2 lim = GetVec2(j, "limit", where, Vec2::Zero());
      js.limit = JointLimit{lim.x(), lim.y()};
    }
    spec.joints.push_back(js);
  }
  const YAML::Node links = root["links"];
  for (std::size_t i = 0; links && i < links.size(); ++i) {
    const std::string where = Indexed("links", i);
    const YAML::Node l = links[i];
    CheckKeys(l, where, {"name", "mass", "inertia", "com"});
    LinkSpec ls;
    ls.name = Get<std::string>(l, "name", where, "");
    ls.mass = Get(l, "mass", where, ls.mass);
    ls.inertia = Get(l, "inertia", where, ls.inertia);
    ls.com = GetVec2(l, "com", where, ls.com);
    spec.links.push_back(ls);
  }
  const YAML::Node spheres = root["contact_spheres"];
  for (std::size_t i = 0; spheres && i < spheres.size(); ++i) {
    const std::string where = Indexed("contact_spheres", i);
    const YAML::Node s = spheres[i];
    CheckKeys(s, where, {"link", "offset", "radius"});
    ContactSphereSpec cs;
    cs.link = Get(s, "link", where, cs.link);
    cs.offset = GetVec2(s, "offset", where, cs.offset);
    cs.radius = Get(s, "radius", where, cs.radius);
    spec.contact_spheres.push_back(cs);
  }
  const YAML::Node actuators = root["actuators"];
  for (std::size_t i = 0; actuators && i < actuators.size(); ++i) {
    const std::string where = Indexed("actuators", i);
    const YAML::Node a = actuators[i];
    CheckKeys(a, where, {"joint", "gear"});
    ActuatorSpec as;
    as.joint = Get(a, "joint", where, as.joint);
    as.gear = Get(a, "gear", where, as.gear);
    spec.actuators.push_back(as);
  }
  return spec;
}

ModelSpec LoadModelSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("", fmt::format("cannot open model file {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseModelSpec(buffer.str());
}

std::string FormatModelSpec(const ModelSpec& spec) {
  YAML::Node root;
  root["gravity"] = spec.gravity;
  root["ground_height"] = spec.ground_height;
  root["k_limit"] = spec.k_limit;
  root["contact"]["k_n"] = spec.contact.k_n;
  root["contact"]["k_d"] = spec.contact.k_d;
  root["contact"]["k_t"] = spec.contact.k_t;
  root["contact"]["mu"] = spec.contact.mu;
  for (const JointSpec& j : spec.joints) {
    YAML::Node n;
    n["name"] = j.name;
    n["kind"] = KindName(j.kind);
    n["parent"] = j.parent;
    n["axis"] = Seq(j.axis);
    n["offset"] = Seq(j.offset);
    if (j.limit) n["limit"] = Seq(Vec2(j.limit->lower, j.limit->upper));
    root["joints"].push_back(n);
  }
  for (const LinkSpec& l : spec.links) {
    YAML::Node n;
    n["name"] = l.name;
    n["mass"] = l.mass;
    n["inertia"] = l.inertia;
    n["com"] = Seq(l.com);
    root["links"].push_back(n);
  }
  for (const ContactSphereSpec& s : spec.contact_spheres) {
    YAML::Node n;
    n["link"] = s.link;
    n["offset"] = Seq(s.offset);
    n["radius"] = s.radius;
    root["contact_spheres"].push_back(n);
  }
  for (const ActuatorSpec& a : spec.actuators) {
    YAML::Node n;
    n["joint"] = a.joint;
    n["gear"] = a.gear;
    root["actuators"].push_back(n);
  }
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << root;
  return out.c_str();
}

}  // namespace shac::sim
