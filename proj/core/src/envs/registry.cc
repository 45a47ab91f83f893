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

#include "shac/envs/registry.h"

#include <stdexcept>
#include <string>

#include <fmt/core.h>

#include "shac/envs/cartpole.h"
#include "shac/envs/hopper.h"

namespace shac::envs {

std::vector<std::string_view> TaskNames() { return {"cartpole", "hopper"}; }

bool IsKnownTask(std::string_view name) { return name == "cartpole" || name == "hopper"; }

EnvConfig DefaultEnvConfig(std::string_view name) {
  if (name == "cartpole") return CartPole::DefaultConfig();
  if (name == "hopper") return Hopper::DefaultConfig();
  throw std::invalid_argument(fmt::format("unknown env '{}' (expected cartpole or hopper)", name));
}

std::shared_ptr<const Task> MakeTask(const EnvConfig& config) {
  const int dof = config.name == "hopper" ? 6 : 2;
  if (!IsKnownTask(config.name)) {
    throw std::invalid_argument(fmt::format("unknown env '{}'", config.name));
  }
  if (static_cast<int>(config.init_q_range.size()) != dof ||
      static_cast<int>(config.init_qd_range.size()) != dof) {
    throw std::invalid_argument(
        fmt::format("env.init ranges must have {} entries for {}", dof, config.name));
  }
  if (!(config.dt > 0)) throw std::invalid_argument("env.dt must be positive");
  if (config.substeps < 1) throw std::invalid_argument("env.substeps must be >= 1");
  if (config.horizon < 1) throw std::invalid_argument("env.horizon must be >= 1");
  if (config.name == "hopper") return std::make_shared<Hopper>(config);
  return std::make_shared<CartPole>(config);
}

}  // namespace shac::envs
