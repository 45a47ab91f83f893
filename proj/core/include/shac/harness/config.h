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

#ifndef SHAC_HARNESS_CONFIG_H_
#define SHAC_HARNESS_CONFIG_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "shac/envs/env.h"
#include "shac/train/trainer.h"

namespace shac::harness {

// Rejection of a configuration value; field() is the dotted key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  envs::EnvConfig env;
  train::TrainOptions train;
  std::string out = "runs/default";
  int checkpoint_interval = 50;  // 0 disables periodic checkpoints
  int grad_log_interval = 50;    // 0 disables per-entry gradient dumps
};

// Resolves a YAML document plus "dotted.key=value" overrides (values are YAML
// scalars or flow sequences). Precedence: overrides > document > defaults.
// Environment defaults follow env.name; without an explicit h, BPTT uses a
// window of 64 steps on cartpole and 128 elsewhere. Unknown keys and
// violated bounds throw ConfigError.
RunConfig ParseRunConfig(const std::string& yaml_text,
                         const std::vector<std::string>& overrides = {});
// reads the file; an empty path means no file
RunConfig LoadRunConfig(const std::string& path, const std::vector<std::string>& overrides = {});

// YAML with every field explicit; ParseRunConfig(FormatRunConfig(c)) == c
std::string FormatRunConfig(const RunConfig& config);

// bound checks shared by the parser and programmatic callers
void ValidateRunConfig(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace shac::harness

#endif  // SHAC_HARNESS_CONFIG_H_
