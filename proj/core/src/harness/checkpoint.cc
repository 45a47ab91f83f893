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

#include "shac/harness/checkpoint.h"

#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

namespace shac::harness {
namespace {

constexpr const char* kMagic = "shac-checkpoint";

std::uint64_t ToLittle(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(bits);
  return bits;
}

struct NamedArray {
  std::string name;
  Eigen::VectorXd values;
};

std::vector<NamedArray> CollectArrays(const train::TrainerState& s) {
  std::vector<NamedArray> arrays = {
      {"actor", s.actor.values},
      {"actor_adam.m", s.actor_adam.first_moment},
      {"actor_adam.v", s.actor_adam.second_moment},
      {"critic", s.critic.params.values},
      {"critic_target", s.critic.target.values},
      {"critic_adam.m", s.critic.adam.first_moment},
      {"critic_adam.v", s.critic.adam.second_moment},
      {"normalizer.mean", s.normalizer.mean},
      {"normalizer.var", s.normalizer.var},
      {"normalizer.count", Eigen::VectorXd::Constant(1, s.normalizer.count)},
  };
  for (size_t i = 0; i < s.envs.size(); ++i) {
    arrays.push_back({fmt::format("env.{}.q", i), s.envs[i].state().q});
    arrays.push_back({fmt::format("env.{}.qd", i), s.envs[i].state().qd});
  }
  return arrays;
}

std::string ReadLine(std::istream& in, const std::string& what) {
  std::string line;
  if (!std::getline(in, line)) throw CheckpointError("checkpoint truncated before " + what);
  return line;
}

// "key rest-of-line"
std::string Expect(std::istream& in, const std::string& key) {
  const std::string line = ReadLine(in, key);
  if (line.rfind(key + " ", 0) != 0) {
    throw CheckpointError(fmt::format("checkpoint: expected '{}', found '{}'", key,
                                      line.substr(0, 40)));
  }
  return line.substr(key.size() + 1);
}

template <typename T>
T ParseNumber(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value)) throw CheckpointError("checkpoint: malformed " + key);
  return value;
}

void Assign(Eigen::VectorXd* dst, const std::map<std::string, Eigen::VectorXd>& arrays,
            const std::string& name, Eigen::Index expected) {
  const auto it = arrays.find(name);
  if (it == arrays.end()) throw CheckpointError("checkpoint is missing array " + name);
  if (it->second.size() != expected) {
    throw CheckpointError(fmt::format("checkpoint array {} has {} entries, expected {}", name,
                                      it->second.size(), expected));
  }
  *dst = it->second;
}

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path, const RunConfig& config,
                    const train::Trainer& trainer, double wall_time) {
  const train::TrainerState& s = trainer.state();
  const std::vector<NamedArray> arrays = CollectArrays(s);
  const std::string config_text = FormatRunConfig(config);

  std::ostringstream header;
  header << kMagic << ' ' << kCheckpointVersion << '\n';
  header << "env " << config.env.name << '\n';
  header << "episode " << s.episode << '\n';
  header << "env_steps " << s.env_steps << '\n';
  header << "wall_time " << fmt::format("{:.17g}", wall_time) << '\n';
  header << "actor_adam_steps " << s.actor_adam.step_count() << '\n';
  header << "critic_adam_steps " << s.critic.adam.step_count() << '\n';
  header << "critic_rng " << s.critic_rng.Serialize() << '\n';
  header << "envs " << s.envs.size() << '\n';
  for (size_t i = 0; i < s.envs.size(); ++i) {
    header << "env_stream " << s.envs[i].steps_since_reset() << ' ' << s.envs[i].rng().Serialize()
           << '\n';
  }
  header << "config " << config_text.size() << '\n' << config_text;
  long total = 0;
  header << "arrays " << arrays.size() << '\n';
  for (const NamedArray& a : arrays) {
    header << "array " << a.name << ' ' << a.values.size() << '\n';
    total += a.values.size();
  }
  header << "payload " << total << '\n';

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp.string());
    out << header.str();
    for (const NamedArray& a : arrays) {
      for (double v : a.values) {
        const std::uint64_t bits = ToLittle(std::bit_cast<std::uint64_t>(v));
        out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
      }
    }
    if (!out) throw CheckpointError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          std::optional<std::string_view> expected_env) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());

  const int version = ParseNumber<int>(Expect(in, kMagic), "version");
  if (version != kCheckpointVersion) {
    throw CheckpointError(fmt::format("checkpoint version {} is not supported (expected {})",
                                      version, kCheckpointVersion));
  }
  const std::string env_name = Expect(in, "env");
  if (expected_env && *expected_env != env_name) {
    throw CheckpointError(fmt::format("checkpoint is for environment '{}', config requests '{}'",
                                      env_name, *expected_env));
  }
  const int episode = ParseNumber<int>(Expect(in, "episode"), "episode");
  const long env_steps = ParseNumber<long>(Expect(in, "env_steps"), "env_steps");
  const double wall_time = ParseNumber<double>(Expect(in, "wall_time"), "wall_time");
  const long actor_steps = ParseNumber<long>(Expect(in, "actor_adam_steps"), "actor_adam_steps");
  const long critic_steps =
      ParseNumber<long>(Expect(in, "critic_adam_steps"), "critic_adam_steps");
  const std::string critic_rng = Expect(in, "critic_rng");
  const int num_envs = ParseNumber<int>(Expect(in, "envs"), "envs");
  std::vector<std::pair<int, std::string>> env_streams;
  for (int i = 0; i < num_envs; ++i) {
    const std::string rest = Expect(in, "env_stream");
    const auto space = rest.find(' ');
    if (space == std::string::npos) throw CheckpointError("checkpoint: malformed env_stream");
    env_streams.emplace_back(ParseNumber<int>(rest.substr(0, space), "env_stream"),
                             rest.substr(space + 1));
  }
  const long config_bytes = ParseNumber<long>(Expect(in, "config"), "config");
  std::string config_text(config_bytes, '\0');
  if (config_bytes < 0 || !in.read(config_text.data(), config_bytes)) {
    throw CheckpointError("checkpoint truncated inside the config block");
  }
  RunConfig config = ParseRunConfig(config_text);
  if (config.env.name != env_name) throw CheckpointError("checkpoint header and config disagree");

  const int num_arrays = ParseNumber<int>(Expect(in, "arrays"), "arrays");
  std::vector<std::pair<std::string, long>> table;
  long total = 0;
  for (int k = 0; k < num_arrays; ++k) {
    std::istringstream line(Expect(in, "array"));
    std::string name;
    long size = -1;
    if (!(line >> name >> size) || size < 0) throw CheckpointError("checkpoint: malformed array");
    table.emplace_back(name, size);
    total += size;
  }
  if (ParseNumber<long>(Expect(in, "payload"), "payload") != total) {
    throw CheckpointError("checkpoint payload size disagrees with the array table");
  }
  std::map<std::string, Eigen::VectorXd> arrays;
  for (const auto& [name, size] : table) {
    Eigen::VectorXd values(size);
    for (long j = 0; j < size; ++j) {
      std::uint64_t bits = 0;
      if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
        throw CheckpointError("checkpoint payload is truncated");
      }
      values[j] = std::bit_cast<double>(ToLittle(bits));
    }
    arrays[name] = std::move(values);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw CheckpointError("checkpoint has trailing bytes after the payload");
  }

  Checkpoint ckpt{config, wall_time, train::Trainer(config.env, config.train)};
  train::TrainerState& s = ckpt.trainer.mutable_state();
  if (static_cast<int>(s.envs.size()) != num_envs) {
    throw CheckpointError("checkpoint environment count disagrees with its config");
  }
  s.episode = episode;
  s.env_steps = env_steps;
  Assign(&s.actor.values, arrays, "actor", s.actor.size());
  Assign(&s.actor_adam.first_moment, arrays, "actor_adam.m", s.actor.size());
  Assign(&s.actor_adam.second_moment, arrays, "actor_adam.v", s.actor.size());
  s.actor_adam.set_step_count(actor_steps);
  Assign(&s.critic.params.values, arrays, "critic", s.critic.params.size());
  Assign(&s.critic.target.values, arrays, "critic_target", s.critic.target.size());
  Assign(&s.critic.adam.first_moment, arrays, "critic_adam.m", s.critic.params.size());
  Assign(&s.critic.adam.second_moment, arrays, "critic_adam.v", s.critic.params.size());
  s.critic.adam.set_step_count(critic_steps);
  const int obs_dim = s.normalizer.dim();
  Assign(&s.normalizer.mean, arrays, "normalizer.mean", obs_dim);
  Assign(&s.normalizer.var, arrays, "normalizer.var", obs_dim);
  Eigen::VectorXd count;
  Assign(&count, arrays, "normalizer.count", 1);
  s.normalizer.count = count[0];
  try {
    s.critic_rng.Deserialize(critic_rng);
  } catch (const std::invalid_argument&) {
    throw CheckpointError("checkpoint: malformed critic random stream");
  }
  const int dof = ckpt.trainer.task().model().dof();
  for (int i = 0; i < num_envs; ++i) {
    Eigen::VectorXd q, qd;
    Assign(&q, arrays, fmt::format("env.{}.q", i), dof);
    Assign(&qd, arrays, fmt::format("env.{}.qd", i), dof);
    s.envs[i].set_state({q, qd}, env_streams[i].first);
    try {
      s.envs[i].rng().Deserialize(env_streams[i].second);
    } catch (const std::invalid_argument&) {
      throw CheckpointError(fmt::format("checkpoint: malformed random stream for env {}", i));
    }
  }
  return ckpt;
}

}  // namespace shac::harness
