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

#ifndef SHAC_TRAIN_TD_LAMBDA_H_
#define SHAC_TRAIN_TD_LAMBDA_H_

#include <Eigen/Core>

namespace shac::train {

using Mat = Eigen::MatrixXd;
using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Lambda-returns over a window of h steps for N environments (rows are time
// steps, columns environments).
//   rewards(t, i)     reward of step t
//   next_values(t, i) bootstrap value of the state after step t; callers put
//                     0 there for failure terminations
//   segment_end(t, i) the episode ended after step t
// Returns never look past a segment end or the window end; the remaining
// lambda weight goes to the longest admissible return, so
//   target(t) = r_t + gamma * ((1 - lambda) V_{t+1} + lambda target(t+1))
// inside a segment and target(t) = r_t + gamma V_{t+1} at its last step.
Mat TdLambdaTargets(const Mat& rewards, const Mat& next_values, const BoolMat& segment_end,
                    double gamma, double lambda);

}  // namespace shac::train

#endif  // SHAC_TRAIN_TD_LAMBDA_H_
