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

#include "shac/harness/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/os.h>

#include "shac/analysis/gradcheck.h"
#include "shac/analysis/histogram.h"
#include "shac/analysis/landscape.h"
#include "shac/common/log.h"
#include "shac/envs/registry.h"
#include "shac/harness/checkpoint.h"
#include "shac/harness/config.h"
#include "shac/harness/run.h"
#include "shac/sim/model_io.h"

namespace shac::harness {
namespace {

namespace fs = std::filesystem;

// top-level config keys that double as --<key> flags
const std::vector<std::string> kFieldFlags = {
    "h", "N", "M", "gamma", "lambda", "actor_lr", "critic_lr", "lr_end", "lr_decay",
    "target_alpha", "beta1", "beta2", "critic_iterations", "critic_minibatches",
    "actor_hidden", "critic_hidden", "policy", "state_dependent_std", "init_log_std",
    "eval_interval", "eval_rollouts", "checkpoint_interval", "grad_log_interval"};

struct ConfigFlags {
  std::string config_path;
  std::string env;
  std::string algo;
  std::string seed;
  std::string out;
  std::vector<std::string> sets;
  std::map<std::string, std::string> fields;

  void Register(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--env", env, "environment (cartpole, hopper)");
    cmd->add_option("--algo", algo, "shac, bptt or shac-no-critic");
    cmd->add_option("--seed", seed, "run seed");
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--set", sets, "dotted override, e.g. env.contact.k_n=2e4")->take_all();
    for (const auto& name : kFieldFlags) {
      cmd->add_option("--" + name, fields[name], "override of " + name);
    }
  }

  RunConfig Resolve() const {
    std::vector<std::string> overrides = sets;
    if (!env.empty()) overrides.push_back("env.name=" + env);
    if (!algo.empty()) overrides.push_back("algo=" + algo);
    if (!seed.empty()) overrides.push_back("seed=" + seed);
    if (!out.empty()) overrides.push_back("out=" + out);
    for (const auto& [name, value] : fields) {
      if (!value.empty()) overrides.push_back(name + "=" + value);
    }
    return LoadRunConfig(config_path, overrides);
  }
};

void PrintEval(const char* label, const train::EvalResult& r) {
  double len = 0;
  for (int l : r.lengths) len += l;
  if (!r.lengths.empty()) len /= static_cast<double>(r.lengths.size());
  fmt::print("{:<13} return {:.3f} +- {:.3f} over {} rollouts (mean length {:.1f})\n", label,
             r.mean, r.stddev, r.returns.size(), len);
}

analysis::WeightId ParseWeightId(const std::string& text) {
  static const std::regex pattern(R"(^([A-Za-z0-9_.]+)\[(\d+)\]$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw std::invalid_argument("weight must look like actor.mean.l0.weight[3], got '" + text + "'");
  }
  return {m[1].str(), std::stoi(m[2].str())};
}

int Train(const ConfigFlags& flags, const std::string& resume) {
  const RunConfig config = flags.Resolve();
  const RunResult result =
      RunTraining(config, resume.empty() ? std::nullopt : std::optional<fs::path>(resume));
  fmt::print("trained {} episodes in {:.1f}s; final eval return {:.3f} +- {:.3f}; output in {}\n",
             result.episodes, result.wall_time_s, result.last_row.eval_return_mean,
             result.last_row.eval_return_std, config.out);
  return 0;
}

int Eval(const std::string& path, int rollouts, int tail) {
  const Checkpoint ckpt = LoadCheckpoint(path);
  fmt::print("checkpoint {} ({}, {}, episode {})\n", path, ckpt.config.env.name,
             train::AlgorithmName(ckpt.config.train.algorithm), ckpt.trainer.state().episode);
  const train::EvalResult det = ckpt.trainer.Evaluate(rollouts, 0, true, tail);
  const train::EvalResult sto = ckpt.trainer.Evaluate(rollouts, 0, false, tail);
  PrintEval("deterministic", det);
  PrintEval("stochastic", sto);
  fmt::print("deterministic mean |q| over the last {} steps:", tail);
  for (double v : det.tail_abs_q) fmt::print(" {:.4f}", v);
  fmt::print("\n");
  return 0;
}

struct LandscapeFlags {
  std::string checkpoint;
  std::string evaluator = "both";
  std::vector<std::string> weights;
  int random_weights = 10;
  int points = 21;
  int trajectories = 128;
  std::uint64_t seed = 0;
  bool plane = false;
  std::string out = ".";
};

int Landscape(const LandscapeFlags& f) {
  const Checkpoint ckpt = LoadCheckpoint(f.checkpoint);
  const train::Trainer& trainer = ckpt.trainer;
  std::vector<analysis::LossEvaluator> evaluators;
  if (f.evaluator == "both") {
    evaluators = {analysis::LossEvaluator::kFull, analysis::LossEvaluator::kSurrogate};
  } else {
    evaluators = {analysis::ParseLossEvaluator(f.evaluator)};
  }
  const std::vector<double> deltas = analysis::Linspace(-1, 1, f.points);
  fs::create_directories(f.out);
  const std::string loss_note =
      "# full: -(1/N) sum_i sum_t gamma^t r_t over the task horizon, stopping at failure\n"
      "# surrogate: -(1/N) sum_i [sum_{t<h} gamma^t r_t + gamma^h V'(s_h)], value dropped on failure\n";

  if (f.plane) {
    RandomStream rng({f.seed, analysis::kLandscapeStreamTag, 1});
    const Eigen::VectorXd dir_a = analysis::RandomDirection(trainer.state().actor, rng);
    const Eigen::VectorXd dir_b = analysis::RandomDirection(trainer.state().actor, rng);
    auto csv = fmt::output_file((fs::path(f.out) / "landscape_plane.csv").string());
    csv.print("{}evaluator,delta_a,delta_b,loss\n", loss_note);
    for (auto ev : evaluators) {
      const Eigen::MatrixXd losses = analysis::ScanPlane(trainer, dir_a, dir_b, deltas, deltas, ev,
                                                         f.trajectories, f.seed);
      for (int a = 0; a < losses.rows(); ++a) {
        for (int b = 0; b < losses.cols(); ++b) {
          csv.print("{},{:.17g},{:.17g},{:.17g}\n", analysis::LossEvaluatorName(ev), deltas[a],
                    deltas[b], losses(a, b));
        }
      }
    }
    fmt::print("wrote {}\n", (fs::path(f.out) / "landscape_plane.csv").string());
    return 0;
  }

  std::vector<analysis::WeightId> ids;
  for (const auto& w : f.weights) ids.push_back(ParseWeightId(w));
  if (ids.empty()) {
    RandomStream rng({f.seed, analysis::kLandscapeStreamTag, 0});
    for (int k = 0; k < f.random_weights; ++k) {
      ids.push_back(analysis::SampleWeight(trainer.state().actor, rng));
    }
  }
  auto csv = fmt::output_file((fs::path(f.out) / "landscape.csv").string());
  csv.print("{}weight,evaluator,delta,loss\n", loss_note);
  auto tv_csv = fmt::output_file((fs::path(f.out) / "landscape_tv.csv").string());
  tv_csv.print("weight,evaluator,total_variation\n");
  int smoother = 0;
  for (const auto& id : ids) {
    std::map<analysis::LossEvaluator, double> tv;
    for (auto ev : evaluators) {
      const analysis::LandscapeScan scan =
          analysis::ScanWeight(trainer, id, deltas, ev, f.trajectories, f.seed);
      for (size_t k = 0; k < deltas.size(); ++k) {
        csv.print("{},{},{:.17g},{:.17g}\n", analysis::FormatWeight(id),
                  analysis::LossEvaluatorName(ev), deltas[k], scan.losses[k]);
      }
      tv[ev] = analysis::TotalVariation(scan.losses);
      tv_csv.print("{},{},{:.17g}\n", analysis::FormatWeight(id), analysis::LossEvaluatorName(ev),
                   tv[ev]);
    }
    if (evaluators.size() == 2) {
      const bool smooth =
          tv[analysis::LossEvaluator::kSurrogate] < tv[analysis::LossEvaluator::kFull];
      smoother += smooth;
      fmt::print("{:<32} tv full {:>12.4f}  surrogate {:>12.4f}{}\n", analysis::FormatWeight(id),
                 tv[analysis::LossEvaluator::kFull], tv[analysis::LossEvaluator::kSurrogate],
                 smooth ? "" : "  (surrogate not smoother)");
    }
  }
  if (evaluators.size() == 2) {
    fmt::print("surrogate smoother on {} of {} weights\n", smoother, ids.size());
  }
  return 0;
}

struct GradcheckFlags {
  std::string checkpoint;
  int entries = 200;
  int warmup = 0;
  double eps = 1e-5;
  double alt_eps = 1e-4;
  double tol = 1e-4;
  double fraction = 0.99;
};

int Gradcheck(const ConfigFlags& flags, const GradcheckFlags& g) {
  RunConfig config = flags.Resolve();
  std::optional<train::Trainer> trainer;
  if (!g.checkpoint.empty()) {
    Checkpoint ckpt = LoadCheckpoint(g.checkpoint);
    trainer.emplace(ckpt.trainer);
    config.train.horizon = trainer->options().horizon;
    if (!flags.fields.at("h").empty()) config.train.horizon = std::stoi(flags.fields.at("h"));
  } else {
    trainer.emplace(config.env, config.train);
  }
  for (int k = 0; k < g.warmup; ++k) trainer->RunEpisode();
  RandomStream rng({config.train.seed, 6});
  const std::vector<int> entries =
      analysis::SampleEntries(trainer->state().actor.size(), g.entries, rng);
  const bool bootstrap = trainer->options().uses_critic();
  const analysis::GradientReport report = analysis::CheckPolicyGradient(
      *trainer, config.train.horizon, bootstrap, g.eps, entries, g.alt_eps);

  fs::create_directories(config.out);
  const fs::path path = fs::path(config.out) / "gradcheck.csv";
  auto csv = fmt::output_file(path.string());
  csv.print("index,analytic,fd,rel_err\n");
  for (size_t k = 0; k < report.indices.size(); ++k) {
    csv.print("{},{:.17g},{:.17g},{:.17g}\n", report.indices[k], report.analytic[k],
              report.finite_diff[k], report.rel_err[k]);
  }
  csv.close();
  int kinked = 0;
  for (size_t k = 0; k < report.finite_diff_alt.size(); ++k) {
    if (analysis::RelativeError(report.finite_diff[k], report.finite_diff_alt[k]) > g.tol) ++kinked;
  }
  const double within = report.FractionWithin(g.tol);
  const bool pass = within >= g.fraction;
  fmt::print("{} entries, {:.2f}% within {:g} relative error (gate {:.2f}%); {} entries disagree "
             "between eps {:g} and {:g}; wrote {}\n",
             report.indices.size(), 100 * within, g.tol, 100 * g.fraction, kinked, g.eps,
             g.alt_eps, path.string());
  fmt::print("gradcheck {}\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int Gradhist(const std::string& run, std::vector<int> episodes, int bins, std::string out) {
  const fs::path grads = fs::path(run) / "grads";
  if (episodes.empty()) {
    static const std::regex name(R"(^grad_(\d+)\.bin$)");
    if (fs::is_directory(grads)) {
      for (const auto& entry : fs::directory_iterator(grads)) {
        std::smatch m;
        const std::string file = entry.path().filename().string();
        if (std::regex_match(file, m, name)) episodes.push_back(std::stoi(m[1].str()));
      }
    }
    std::sort(episodes.begin(), episodes.end());
    if (episodes.empty()) throw std::runtime_error("no gradient logs under " + grads.string());
  }
  if (out.empty()) out = run;
  fs::create_directories(out);
  for (int ep : episodes) {
    const std::vector<double> values = analysis::ReadGradientLog(grads, ep);
    const analysis::Histogram h = analysis::BuildHistogram(values, bins);
    const fs::path path = fs::path(out) / fmt::format("gradhist_{}.csv", ep);
    analysis::WriteHistogramCsv(path, h);
    double max_abs = 0;
    for (double v : values) max_abs = std::max(max_abs, std::abs(v));
    fmt::print("episode {:>5}: {} entries, max |g| {:.6g} -> {}\n", ep, values.size(), max_abs,
               path.string());
  }
  return 0;
}

}  // namespace

int PrintModel(const std::string& env, const std::string& out) {
  const auto task = envs::MakeTask(envs::DefaultEnvConfig(env));
  const std::string text = sim::FormatModelSpec(task->model().spec());
  if (out.empty()) {
    fmt::print("{}", text);
  } else {
    auto file = fmt::output_file(out);
    file.print("{}", text);
  }
  return 0;
}

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"Short-horizon actor-critic on a differentiable planar simulator", "shac"};
  // --h is the horizon override, so help is long-form only
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "only print warnings and results");

  CLI::App* train = app.add_subcommand("train", "train a policy");
  ConfigFlags train_flags;
  train_flags.Register(train);
  std::string resume;
  train->add_option("--resume", resume, "continue from a checkpoint")->check(CLI::ExistingFile);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  std::string eval_ckpt;
  int rollouts = 16;
  int tail = 50;
  eval->add_option("--checkpoint", eval_ckpt, "checkpoint file")->required()->check(CLI::ExistingFile);
  eval->add_option("--rollouts", rollouts, "rollouts per mode")->check(CLI::PositiveNumber);
  eval->add_option("--tail", tail, "steps averaged for the final |q| report")->check(CLI::PositiveNumber);

  CLI::App* landscape = app.add_subcommand("landscape", "single-weight loss scans");
  LandscapeFlags lf;
  landscape->add_option("--checkpoint", lf.checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
  landscape->add_option("--evaluator", lf.evaluator, "full, surrogate or both")
      ->check(CLI::IsMember({"full", "surrogate", "both"}));
  landscape->add_option("--weight", lf.weights, "weight as slice[index]; repeatable");
  landscape->add_option("--random-weights", lf.random_weights, "weights drawn when none given")
      ->check(CLI::PositiveNumber);
  landscape->add_option("--points", lf.points, "deltas evenly spaced over [-1, 1]")->check(CLI::Range(2, 100000));
  landscape->add_option("--trajectories", lf.trajectories, "trajectories per loss")->check(CLI::PositiveNumber);
  landscape->add_option("--seed", lf.seed, "trajectory seed");
  landscape->add_flag("--plane", lf.plane, "scan two random directions instead of single weights");
  landscape->add_option("--out", lf.out, "output directory");

  CLI::App* gradcheck = app.add_subcommand("gradcheck", "analytic actor gradient vs finite differences");
  ConfigFlags gc_flags;
  gc_flags.Register(gradcheck);
  GradcheckFlags gf;
  gradcheck->add_option("--checkpoint", gf.checkpoint, "check a trained state")->check(CLI::ExistingFile);
  gradcheck->add_option("--entries", gf.entries, "sampled gradient entries")->check(CLI::PositiveNumber);
  gradcheck->add_option("--warmup", gf.warmup, "training episodes before the check")->check(CLI::NonNegativeNumber);
  gradcheck->add_option("--eps", gf.eps, "finite-difference step")->check(CLI::PositiveNumber);
  gradcheck->add_option("--alt-eps", gf.alt_eps, "second step for the consistency count")->check(CLI::PositiveNumber);
  gradcheck->add_option("--tol", gf.tol, "relative error tolerance")->check(CLI::PositiveNumber);
  gradcheck->add_option("--fraction", gf.fraction, "required fraction within tolerance")->check(CLI::Range(0.0, 1.0));

  CLI::App* gradhist = app.add_subcommand("gradhist", "histograms of logged actor gradients");
  std::string run_dir;
  std::vector<int> episodes;
  int bins = 50;
  std::string hist_out;
  gradhist->add_option("--run", run_dir, "training output directory")->required()->check(CLI::ExistingDirectory);
  gradhist->add_option("--episodes", episodes, "episodes to bin (default: all logged)");
  gradhist->add_option("--bins", bins, "bins per histogram")->check(CLI::PositiveNumber);
  gradhist->add_option("--out", hist_out, "output directory (default: the run directory)");

  CLI::App* model = app.add_subcommand("model", "write the model file of an environment");
  std::string model_env;
  std::string model_out;
  model->add_option("--env", model_env, "environment name")->required();
  model->add_option("--out", model_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (quiet) log::SetLevel(log::Level::kWarn);

  try {
    if (*train) return Train(train_flags, resume);
    if (*eval) return Eval(eval_ckpt, rollouts, tail);
    if (*landscape) return Landscape(lf);
    if (*gradcheck) return Gradcheck(gc_flags, gf);
    if (*gradhist) return Gradhist(run_dir, episodes, bins, hist_out);
    if (*model) return PrintModel(model_env, model_out);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace shac::harness
