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

#include "shac/common/log.h"

#include <atomic>
#include <cstdio>

#include <fmt/core.h>

namespace shac::log {
namespace {

std::atomic<Level> g_level{Level::kInfo};
std::atomic<long> g_warnings{0};

}  // namespace

void SetLevel(Level level) { g_level = level; }
Level GetLevel() { return g_level; }

void Info(std::string_view message) {
  if (g_level <= Level::kInfo) fmt::print(stderr, "[shac] {}\n", message);
}

void Warn(std::string_view message) {
  ++g_warnings;
  if (g_level <= Level::kWarn) fmt::print(stderr, "[shac] warning: {}\n", message);
}

long WarningCount() { return g_warnings; }

}  // namespace shac::log
