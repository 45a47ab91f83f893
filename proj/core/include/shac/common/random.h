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

#ifndef SHAC_COMMON_RANDOM_H_
#define SHAC_COMMON_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

namespace shac {

// Seedable random stream whose complete state (engine and the cached normal
// deviate) can be serialized, so checkpoints resume bit-exactly.
class RandomStream {
 public:
  RandomStream() : RandomStream({0}) {}
  explicit RandomStream(std::initializer_list<std::uint64_t> seed_words);

  double Uniform(double lo, double hi);
  double Normal();
  std::uint64_t Bits() { return engine_(); }
  std::mt19937_64& engine() { return engine_; }

  std::string Serialize() const;
  void Deserialize(const std::string& text);

  bool operator==(const RandomStream& other) const;

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace shac

#endif  // SHAC_COMMON_RANDOM_H_
