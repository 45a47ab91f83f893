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

#ifndef SHAC_HARNESS_CHECKPOINT_H_
#define SHAC_HARNESS_CHECKPOINT_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "shac/harness/config.h"
#include "shac/train/trainer.h"

namespace shac::harness {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  RunConfig config;
  double wall_time = 0;  // training seconds accumulated before the save
  train::Trainer trainer;
};

// Plain-text header (version, config, counters, random stream states, array
// table) followed by a little-endian float64 payload. Written to a temporary
// file and renamed into place.
void SaveCheckpoint(const std::filesystem::path& path, const RunConfig& config,
                    const train::Trainer& trainer, double wall_time);

// Rejects version mismatches, truncated or malformed files, and, when
// expected_env is given, a checkpoint of a different environment.
Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          std::optional<std::string_view> expected_env = std::nullopt);

}  // namespace shac::harness

#endif  // SHAC_HARNESS_CHECKPOINT_H_
