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

#ifndef SHAC_HARNESS_CLI_H_
#define SHAC_HARNESS_CLI_H_

namespace shac::harness {

// Entry point of the shac tool: train, eval, landscape, gradcheck, gradhist.
// Returns the process exit status.
int RunCli(int argc, const char* const* argv);

}  // namespace shac::harness

#endif  // SHAC_HARNESS_CLI_H_
