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

#ifndef SHAC_SIM_MODEL_IO_H_
#define SHAC_SIM_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "shac/sim/model.h"

namespace shac::sim {

// Human-readable model files (YAML):
//
//   gravity: 9.81          # m/s^2, optional
//   ground_height: 0       # optional
//   k_limit: 1000          # optional
//   contact: {k_n: 1e4, k_d: 100, k_t: 1000, mu: 0.9}   # optional
//   joints:
//     - {name: cart, kind: prismatic, parent: -1, axis: [1, 0], offset: [0, 0],
//        limit: [-2, 2]}
//   links:
//     - {name: cart, mass: 1, inertia: 0.1, com: [0, 0]}
//   contact_spheres:
//     - {link: 0, offset: [0, 0], radius: 0.05}
//   actuators:
//     - {joint: 0, gear: 40}
//
// kind is one of prismatic, revolute, free_planar. Unknown keys are rejected
// with a ModelError naming the key.
ModelSpec ParseModelSpec(std::string_view yaml_text);
ModelSpec LoadModelSpec(const std::filesystem::path& path);
std::string FormatModelSpec(const ModelSpec& spec);

}  // namespace shac::sim

#endif  // SHAC_SIM_MODEL_IO_H_
