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

#include "shac/harness/config.h"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

#include "shac/envs/registry.h"

namespace shac::harness {
namespace {

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "env", "env.name", "env.dt", "env.substeps", "env.horizon", "env.action_limit",
      "env.k_limit", "env.contact", "env.contact.k_n", "env.contact.k_d", "env.contact.k_t",
      "env.contact.mu", "env.init_q_range", "env.init_qd_range",
      "algo", "seed", "h", "N", "M", "gamma", "lambda", "actor_lr", "critic_lr", "lr_end",
      "lr_decay", "target_alpha", "beta1", "beta2", "critic_iterations", "critic_minibatches",
      "actor_hidden", "critic_hidden", "policy", "state_dependent_std", "init_log_std",
      "eval_interval", "eval_rollouts", "checkpoint_interval", "grad_log_interval", "out"};
  return keys;
}

bool IsSection(const std::string& key) { return key == "env" || key == "env.contact"; }

void CheckKeys(const YAML::Node& node, const std::string& prefix) {
  if (!node.IsMap()) {
    throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected a mapping");
  }
  for (const auto& item : node) {
    const std::string key = item.first.as<std::string>();
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (!KnownKeys().contains(full)) throw ConfigError(full, "unknown key");
    if (IsSection(full)) {
      CheckKeys(item.second, full);
    } else if (item.second.IsMap()) {
      throw ConfigError(full, "expected a value, got a mapping");
    }
  }
}

std::vector<std::string> SplitKey(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError(dotted, "malformed key");
    parts.push_back(part);
  }
  if (parts.empty()) throw ConfigError(dotted, "malformed key");
  return parts;
}

YAML::Node Lookup(const YAML::Node& node, const std::vector<std::string>& parts, size_t k) {
  if (k == parts.size()) return node;
  if (!node.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
  const YAML::Node child = node[parts[k]];
  if (!child.IsDefined()) return YAML::Node(YAML::NodeType::Undefined);
  return Lookup(child, parts, k + 1);
}

YAML::Node Lookup(const YAML::Node& root, const std::string& dotted) {
  return Lookup(root, SplitKey(dotted), 0);
}

template <typename T>
bool Read(const YAML::Node& root, const std::string& key, T* out) {
  const YAML::Node node = Lookup(root, key);
  if (!node.IsDefined()) return false;
  try {
    *out = node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, "cannot parse value '" + YAML::Dump(node) + "'");
  }
  return true;
}

void SetDotted(YAML::Node root, const std::string& dotted, const YAML::Node& value) {
  const std::vector<std::string> parts = SplitKey(dotted);
  std::vector<YAML::Node> chain{root};
  for (size_t k = 0; k + 1 < parts.size(); ++k) {
    const YAML::Node existing = Lookup(chain.back(), {parts[k]}, 0);
    if (!existing.IsDefined() || existing.IsNull()) {
      chain.back()[parts[k]] = YAML::Node(YAML::NodeType::Map);
    } else if (!existing.IsMap()) {
      throw ConfigError(dotted, "parent key is not a section");
    }
    chain.push_back(chain.back()[parts[k]]);
  }
  chain.back()[parts.back()] = value;
}

void Require(bool ok, const char* field, const std::string& bound) {
  if (!ok) throw ConfigError(field, "must satisfy " + bound);
}

}  // namespace

void ValidateRunConfig(const RunConfig& c) {
  const train::TrainOptions& t = c.train;
  Require(t.gamma > 0 && t.gamma <= 1, "gamma", "0 < gamma <= 1");
  Require(t.lambda >= 0 && t.lambda <= 1, "lambda", "0 <= lambda <= 1");
  Require(t.target_alpha >= 0 && t.target_alpha <= 1, "target_alpha", "0 <= alpha <= 1");
  Require(t.horizon >= 1, "h", "h >= 1");
  Require(t.num_envs >= 1, "N", "N >= 1");
  Require(t.episodes >= 0, "M", "M >= 0");
  Require(std::isfinite(t.actor_lr) && t.actor_lr > 0, "actor_lr", "actor_lr > 0");
  Require(std::isfinite(t.critic_lr) && t.critic_lr > 0, "critic_lr", "critic_lr > 0");
  Require(std::isfinite(t.lr_end) && t.lr_end > 0, "lr_end", "lr_end > 0");
  Require(t.beta1 >= 0 && t.beta1 < 1, "beta1", "0 <= beta1 < 1");
  Require(t.beta2 >= 0 && t.beta2 < 1, "beta2", "0 <= beta2 < 1");
  Require(t.critic_iterations >= 1, "critic_iterations", "critic_iterations >= 1");
  Require(t.critic_minibatches >= 1 && t.critic_minibatches <= t.num_envs * t.horizon,
          "critic_minibatches", "1 <= critic_minibatches <= N * h");
  Require(!t.actor_hidden.empty(), "actor_hidden", "at least one hidden layer");
  Require(!t.critic_hidden.empty(), "critic_hidden", "at least one hidden layer");
  for (int w : t.actor_hidden) Require(w >= 1, "actor_hidden", "widths >= 1");
  for (int w : t.critic_hidden) Require(w >= 1, "critic_hidden", "widths >= 1");
  Require(std::isfinite(t.init_log_std), "init_log_std", "a finite value");
  Require(t.eval_interval >= 0, "eval_interval", "eval_interval >= 0");
  Require(t.eval_rollouts >= 1, "eval_rollouts", "eval_rollouts >= 1");
  Require(c.checkpoint_interval >= 0, "checkpoint_interval", "checkpoint_interval >= 0");
  Require(c.grad_log_interval >= 0, "grad_log_interval", "grad_log_interval >= 0");
  Require(!c.out.empty(), "out", "a non-empty path");

  const envs::EnvConfig& e = c.env;
  Require(envs::IsKnownTask(e.name), "env.name",
          fmt::format("one of {}", fmt::join(envs::TaskNames(), ", ")));
  Require(std::isfinite(e.dt) && e.dt > 0, "env.dt", "dt > 0");
  Require(e.substeps >= 1, "env.substeps", "substeps >= 1");
  Require(e.horizon >= 1, "env.horizon", "horizon >= 1");
  Require(std::isfinite(e.action_limit) && e.action_limit > 0, "env.action_limit",
          "action_limit > 0");
  Require(e.k_limit >= 0, "env.k_limit", "k_limit >= 0");
  Require(e.contact.k_n >= 0, "env.contact.k_n", "k_n >= 0");
  Require(e.contact.k_d >= 0, "env.contact.k_d", "k_d >= 0");
  Require(e.contact.k_t >= 0, "env.contact.k_t", "k_t >= 0");
  Require(e.contact.mu >= 0, "env.contact.mu", "mu >= 0");
  const auto defaults = envs::DefaultEnvConfig(e.name);
  Require(e.init_q_range.size() == defaults.init_q_range.size(), "env.init_q_range",
          fmt::format("length {}", defaults.init_q_range.size()));
  Require(e.init_qd_range.size() == defaults.init_qd_range.size(), "env.init_qd_range",
          fmt::format("length {}", defaults.init_qd_range.size()));
  for (double r : e.init_q_range) Require(r >= 0, "env.init_q_range", "entries >= 0");
  for (double r : e.init_qd_range) Require(r >= 0, "env.init_qd_range", "entries >= 0");
}

RunConfig ParseRunConfig(const std::string& yaml_text, const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", std::string("YAML parse error: ") + e.what());
  }
  if (!root.IsDefined() || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError("<root>", "expected a mapping");
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError(item, "override must have the form key=value");
    }
    const std::string key = item.substr(0, eq);
    YAML::Node value;
    try {
      value = YAML::Load(item.substr(eq + 1));
    } catch (const YAML::Exception& e) {
      throw ConfigError(key, std::string("cannot parse override value: ") + e.what());
    }
    if (!value.IsDefined() || value.IsNull()) throw ConfigError(key, "override value is empty");
    SetDotted(root, key, value);
  }
  CheckKeys(root, "");

  RunConfig c;
  std::string name = "cartpole";
  Read(root, "env.name", &name);
  if (!envs::IsKnownTask(name)) {
    throw ConfigError("env.name", fmt::format("unknown environment '{}' (one of {})", name,
                                              fmt::join(envs::TaskNames(), ", ")));
  }
  c.env = envs::DefaultEnvConfig(name);
  envs::EnvConfig& e = c.env;
  Read(root, "env.dt", &e.dt);
  Read(root, "env.substeps", &e.substeps);
  Read(root, "env.horizon", &e.horizon);
  Read(root, "env.action_limit", &e.action_limit);
  Read(root, "env.k_limit", &e.k_limit);
  Read(root, "env.contact.k_n", &e.contact.k_n);
  Read(root, "env.contact.k_d", &e.contact.k_d);
  Read(root, "env.contact.k_t", &e.contact.k_t);
  Read(root, "env.contact.mu", &e.contact.mu);
  Read(root, "env.init_q_range", &e.init_q_range);
  Read(root, "env.init_qd_range", &e.init_qd_range);

  train::TrainOptions& t = c.train;
  std::string algo = "shac";
  Read(root, "algo", &algo);
  try {
    t.algorithm = train::ParseAlgorithm(algo);
  } catch (const std::invalid_argument& err) {
    throw ConfigError("algo", err.what());
  }
  if (name == "hopper") t.actor_hidden = {128, 64, 32};
  if (!Read(root, "h", &t.horizon) && t.algorithm == train::Algorithm::kBptt) {
    t.horizon = name == "cartpole" ? 64 : 128;
  }
  Read(root, "seed", &t.seed);
  Read(root, "N", &t.num_envs);
  Read(root, "M", &t.episodes);
  Read(root, "gamma", &t.gamma);
  Read(root, "lambda", &t.lambda);
  Read(root, "actor_lr", &t.actor_lr);
  Read(root, "critic_lr", &t.critic_lr);
  Read(root, "lr_end", &t.lr_end);
  Read(root, "lr_decay", &t.lr_decay);
  Read(root, "target_alpha", &t.target_alpha);
  Read(root, "beta1", &t.beta1);
  Read(root, "beta2", &t.beta2);
  Read(root, "critic_iterations", &t.critic_iterations);
  Read(root, "critic_minibatches", &t.critic_minibatches);
  Read(root, "actor_hidden", &t.actor_hidden);
  Read(root, "critic_hidden", &t.critic_hidden);
  std::string policy = "stochastic";
  Read(root, "policy", &policy);
  if (policy != "stochastic" && policy != "deterministic") {
    throw ConfigError("policy", "must be stochastic or deterministic");
  }
  t.deterministic_policy = policy == "deterministic";
  Read(root, "state_dependent_std", &t.state_dependent_std);
  Read(root, "init_log_std", &t.init_log_std);
  Read(root, "eval_interval", &t.eval_interval);
  Read(root, "eval_rollouts", &t.eval_rollouts);
  Read(root, "checkpoint_interval", &c.checkpoint_interval);
  Read(root, "grad_log_interval", &c.grad_log_interval);
  Read(root, "out", &c.out);

  ValidateRunConfig(c);
  return c;
}

RunConfig LoadRunConfig(const std::string& path, const std::vector<std::string>& overrides) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  return ParseRunConfig(text, overrides);
}

std::string FormatRunConfig(const RunConfig& c) {
  const envs::EnvConfig& e = c.env;
  const train::TrainOptions& t = c.train;
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "env" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << e.name;
  out << YAML::Key << "dt" << YAML::Value << e.dt;
  out << YAML::Key << "substeps" << YAML::Value << e.substeps;
  out << YAML::Key << "horizon" << YAML::Value << e.horizon;
  out << YAML::Key << "action_limit" << YAML::Value << e.action_limit;
  out << YAML::Key << "k_limit" << YAML::Value << e.k_limit;
  out << YAML::Key << "contact" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "k_n" << YAML::Value << e.contact.k_n;
  out << YAML::Key << "k_d" << YAML::Value << e.contact.k_d;
  out << YAML::Key << "k_t" << YAML::Value << e.contact.k_t;
  out << YAML::Key << "mu" << YAML::Value << e.contact.mu;
  out << YAML::EndMap;
  out << YAML::Key << "init_q_range" << YAML::Value << YAML::Flow << e.init_q_range;
  out << YAML::Key << "init_qd_range" << YAML::Value << YAML::Flow << e.init_qd_range;
  out << YAML::EndMap;
  out << YAML::Key << "algo" << YAML::Value << std::string(train::AlgorithmName(t.algorithm));
  out << YAML::Key << "seed" << YAML::Value << t.seed;
  out << YAML::Key << "h" << YAML::Value << t.horizon;
  out << YAML::Key << "N" << YAML::Value << t.num_envs;
  out << YAML::Key << "M" << YAML::Value << t.episodes;
  out << YAML::Key << "gamma" << YAML::Value << t.gamma;
  out << YAML::Key << "lambda" << YAML::Value << t.lambda;
  out << YAML::Key << "actor_lr" << YAML::Value << t.actor_lr;
  out << YAML::Key << "critic_lr" << YAML::Value << t.critic_lr;
  out << YAML::Key << "lr_end" << YAML::Value << t.lr_end;
  out << YAML::Key << "lr_decay" << YAML::Value << t.lr_decay;
  out << YAML::Key << "target_alpha" << YAML::Value << t.target_alpha;
  out << YAML::Key << "beta1" << YAML::Value << t.beta1;
  out << YAML::Key << "beta2" << YAML::Value << t.beta2;
  out << YAML::Key << "critic_iterations" << YAML::Value << t.critic_iterations;
  out << YAML::Key << "critic_minibatches" << YAML::Value << t.critic_minibatches;
  out << YAML::Key << "actor_hidden" << YAML::Value << YAML::Flow << t.actor_hidden;
  out << YAML::Key << "critic_hidden" << YAML::Value << YAML::Flow << t.critic_hidden;
  out << YAML::Key << "policy" << YAML::Value
      << (t.deterministic_policy ? "deterministic" : "stochastic");
  out << YAML::Key << "state_dependent_std" << YAML::Value << t.state_dependent_std;
  out << YAML::Key << "init_log_std" << YAML::Value << t.init_log_std;
  out << YAML::Key << "eval_interval" << YAML::Value << t.eval_interval;
  out << YAML::Key << "eval_rollouts" << YAML::Value << t.eval_rollouts;
  out << YAML::Key << "checkpoint_interval" << YAML::Value << c.checkpoint_interval;
  out << YAML::Key << "grad_log_interval" << YAML::Value << c.grad_log_interval;
  out << YAML::Key << "out" << YAML::Value << c.out;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  const envs::EnvConfig& ea = a.env;
  const envs::EnvConfig& eb = b.env;
  const bool env_eq = ea.name == eb.name && ea.dt == eb.dt && ea.substeps == eb.substeps &&
                      ea.horizon == eb.horizon && ea.action_limit == eb.action_limit &&
                      ea.k_limit == eb.k_limit && ea.contact.k_n == eb.contact.k_n &&
                      ea.contact.k_d == eb.contact.k_d && ea.contact.k_t == eb.contact.k_t &&
                      ea.contact.mu == eb.contact.mu && ea.init_q_range == eb.init_q_range &&
                      ea.init_qd_range == eb.init_qd_range;
  const train::TrainOptions& ta = a.train;
  const train::TrainOptions& tb = b.train;
  const bool train_eq =
      ta.algorithm == tb.algorithm && ta.horizon == tb.horizon && ta.num_envs == tb.num_envs &&
      ta.episodes == tb.episodes && ta.gamma == tb.gamma && ta.lambda == tb.lambda &&
      ta.actor_lr == tb.actor_lr && ta.critic_lr == tb.critic_lr && ta.lr_end == tb.lr_end &&
      ta.lr_decay == tb.lr_decay && ta.target_alpha == tb.target_alpha &&
      ta.beta1 == tb.beta1 && ta.beta2 == tb.beta2 &&
      ta.critic_iterations == tb.critic_iterations &&
      ta.critic_minibatches == tb.critic_minibatches && ta.actor_hidden == tb.actor_hidden &&
      ta.critic_hidden == tb.critic_hidden &&
      ta.deterministic_policy == tb.deterministic_policy &&
      ta.state_dependent_std == tb.state_dependent_std &&
      ta.init_log_std == tb.init_log_std && ta.seed == tb.seed &&
      ta.eval_interval == tb.eval_interval && ta.eval_rollouts == tb.eval_rollouts;
  return env_eq && train_eq && a.out == b.out &&
         a.checkpoint_interval == b.checkpoint_interval &&
         a.grad_log_interval == b.grad_log_interval;
}

}  // namespace shac::harness
