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

#ifndef SHAC_COMMON_LOG_H_
#define SHAC_COMMON_LOG_H_

#include <string_view>

namespace shac::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kSilent = 3 };

void SetLevel(Level level);
Level GetLevel();

void Info(std::string_view message);
void Warn(std::string_view message);

// number of warnings emitted since process start; tests use it to observe
// skipped optimizer updates and aborted episodes
long WarningCount();

}  // namespace shac::log

#endif  // SHAC_COMMON_LOG_H_
