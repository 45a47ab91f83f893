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

#ifndef SHAC_HARNESS_RUN_H_
#define SHAC_HARNESS_RUN_H_

#include <filesystem>
#include <optional>

#include "shac/harness/config.h"
#include "shac/harness/metrics.h"
#include "shac/train/trainer.h"

namespace shac::harness {

struct RunResult {
  int episodes = 0;
  double wall_time_s = 0;
  MetricsRow last_row;
};

// Trains according to config and writes into config.out:
//   config.yaml, metrics.csv, timers.csv, grads/grad_<episode>.bin,
//   ckpt_<episode> every checkpoint_interval episodes, and final.
// Evaluations (deterministic policy, eval_rollouts rollouts) run every
// eval_interval episodes and after the last one. When resume is set, training
// continues from that checkpoint with its configuration (only out is taken
// from config); metrics rows past the checkpoint episode are discarded.
RunResult RunTraining(const RunConfig& config,
                      const std::optional<std::filesystem::path>& resume = std::nullopt);

}  // namespace shac::harness

#endif  // SHAC_HARNESS_RUN_H_
