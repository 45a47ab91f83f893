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

#ifndef SHAC_ENVS_REGISTRY_H_
#define SHAC_ENVS_REGISTRY_H_

#include <memory>
#include <string_view>
#include <vector>

#include "shac/envs/env.h"

namespace shac::envs {

std::vector<std::string_view> TaskNames();
bool IsKnownTask(std::string_view name);
// defaults for a task; throws std::invalid_argument for unknown names
EnvConfig DefaultEnvConfig(std::string_view name);
std::shared_ptr<const Task> MakeTask(const EnvConfig& config);

}  // namespace shac::envs

#endif  // SHAC_ENVS_REGISTRY_H_
