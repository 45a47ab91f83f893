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

#include "shac/common/random.h"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace shac {

RandomStream::RandomStream(std::initializer_list<std::uint64_t> seed_words) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t w : seed_words) {
    words.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double RandomStream::Uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(engine_);
}

double RandomStream::Normal() { return normal_(engine_); }

std::string RandomStream::Serialize() const {
  std::ostringstream out;
  out << engine_ << ' ' << normal_;
  return out.str();
}

void RandomStream::Deserialize(const std::string& text) {
  std::istringstream in(text);
  in >> engine_ >> normal_;
  if (!in) throw std::invalid_argument("malformed random stream state");
}

bool RandomStream::operator==(const RandomStream& other) const {
  return engine_ == other.engine_ && normal_ == other.normal_;
}

}  // namespace shac
