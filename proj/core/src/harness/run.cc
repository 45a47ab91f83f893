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

#include "shac/harness/run.h"

#include <chrono>
#include <cmath>
#include <fstream>

#include <fmt/core.h>

#include "shac/analysis/histogram.h"
#include "shac/common/log.h"
#include "shac/harness/checkpoint.h"

namespace shac::harness {
namespace {

using Clock = std::chrono::steady_clock;

bool Every(int episode, int interval) { return interval > 0 && episode % interval == 0; }

}  // namespace

RunResult RunTraining(const RunConfig& requested,
                      const std::optional<std::filesystem::path>& resume) {
  std::optional<Checkpoint> ckpt;
  if (resume) ckpt.emplace(LoadCheckpoint(*resume, requested.env.name));
  RunConfig config = ckpt ? ckpt->config : requested;
  config.out = requested.out;
  ValidateRunConfig(config);
  train::Trainer trainer = ckpt ? ckpt->trainer : train::Trainer(config.env, config.train);
  double wall_time = ckpt ? ckpt->wall_time : 0;
  const int start = trainer.state().episode;
  ckpt.reset();

  const std::filesystem::path out(config.out);
  std::filesystem::create_directories(out);
  {
    std::ofstream cfg(out / "config.yaml");
    cfg << FormatRunConfig(config);
  }
  CsvLog metrics(out / "metrics.csv", kMetricsHeader, resume ? start : -1);
  CsvLog timers(out / "timers.csv", kTimersHeader, resume ? start : -1);

  const train::TrainOptions& opts = config.train;
  RunResult result;
  for (int ep = start + 1; ep <= opts.episodes; ++ep) {
    const auto t0 = Clock::now();
    train::EpisodeStats stats = trainer.RunEpisode();
    wall_time += std::chrono::duration<double>(Clock::now() - t0).count();

    MetricsRow row;
    row.episode = stats.episode;
    row.env_steps = stats.env_steps;
    row.wall_time_s = wall_time;
    row.policy_loss = stats.policy_loss;
    row.value_loss_final = opts.uses_critic() ? stats.value_loss : std::nan("");
    row.actor_grad_norm = stats.actor_grad_norm;
    row.eval_return_mean = std::nan("");
    row.eval_return_std = std::nan("");
    row.terminations_in_episode = stats.terminations;
    if (Every(ep, opts.eval_interval) || ep == opts.episodes) {
      const train::EvalResult eval = trainer.Evaluate(opts.eval_rollouts, ep, true);
      row.eval_return_mean = eval.mean;
      row.eval_return_std = eval.stddev;
      log::Info(fmt::format("episode {:>5}  loss {:>10.4f}  eval {:>10.2f} +- {:.2f}  {:.1f}s", ep,
                            row.policy_loss, eval.mean, eval.stddev, wall_time));
    }
    metrics.Append(FormatMetricsRow(row));
    timers.Append(FormatTimerRow(
        {ep, stats.forward_seconds, stats.backward_seconds, stats.critic_seconds}));
    if (Every(ep, config.grad_log_interval) || ep == 1) {
      analysis::WriteGradientLog(out / "grads", ep, stats.actor_grad);
    }
    if (Every(ep, config.checkpoint_interval)) {
      SaveCheckpoint(out / fmt::format("ckpt_{}", ep), config, trainer, wall_time);
    }
    result.last_row = row;
  }
  SaveCheckpoint(out / "final", config, trainer, wall_time);
  result.episodes = trainer.state().episode;
  result.wall_time_s = wall_time;
  return result;
}

}  // namespace shac::harness
