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

#include <cmath>
#include <fstream>
#include <vector>

#include <gtest/gtest.h>

#include "shac/analysis/gradcheck.h"
#include "shac/analysis/histogram.h"
#include "shac/analysis/landscape.h"
#include "test_util.h"

namespace shac::analysis {
namespace {

train::TrainOptions TinyOptions() {
  train::TrainOptions opts;
  opts.horizon = 8;
  opts.num_envs = 4;
  opts.episodes = 10;
  opts.actor_hidden = {16, 16};
  opts.critic_hidden = {16, 16};
  opts.critic_iterations = 2;
  opts.seed = 3;
  return opts;
}

TEST(FiniteDiff, QuadraticIsExact) {
  RandomStream rng({1});
  const Vec theta = testing::RandomVec(20, 2.0, rng);
  const std::vector<int> entries = {0, 3, 7, 19};
  auto loss = [](const Vec& x) { return x.squaredNorm(); };
  const GradientReport r = FiniteDiffGradient(loss, theta, 2 * theta, 1e-3, entries, 1e-2);
  ASSERT_EQ(r.indices.size(), entries.size());
  EXPECT_EQ(r.analytic.size(), entries.size());
  EXPECT_EQ(r.finite_diff.size(), entries.size());
  EXPECT_EQ(r.rel_err.size(), entries.size());
  EXPECT_EQ(r.finite_diff_alt.size(), entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    EXPECT_NEAR(r.finite_diff[k], 2 * theta[entries[k]], 1e-10);
    EXPECT_NEAR(r.finite_diff_alt[k], 2 * theta[entries[k]], 1e-10);
  }
  EXPECT_EQ(r.FractionWithin(1e-8), 1.0);
}

TEST(FiniteDiff, RejectsBadInput) {
  const Vec x = Vec::Ones(3);
  auto loss = [](const Vec& v) { return v.sum(); };
  const std::vector<int> entries = {0};
  EXPECT_THROW(FiniteDiffGradient(loss, x, x, 0.0, entries), std::invalid_argument);
  EXPECT_THROW(FiniteDiffGradient(loss, x, x, -1e-5, entries), std::invalid_argument);
  EXPECT_THROW(FiniteDiffGradient(loss, x, Vec::Ones(2), 1e-5, entries), std::invalid_argument);
  const std::vector<int> bad = {3};
  EXPECT_THROW(FiniteDiffGradient(loss, x, x, 1e-5, bad), std::invalid_argument);
}

TEST(FiniteDiff, RelativeError) {
  EXPECT_EQ(RelativeError(0, 0), 0);
  EXPECT_EQ(RelativeError(1, 1), 0);
  EXPECT_NEAR(RelativeError(1, 3), 0.5, 1e-9);
  // differences below the absolute floor count as agreement
  EXPECT_EQ(RelativeError(1e-12, -1e-12), 0);
}

TEST(FiniteDiff, SampleEntriesAreDistinctAndSorted) {
  RandomStream rng({2});
  const std::vector<int> e = SampleEntries(100, 30, rng);
  ASSERT_EQ(e.size(), 30u);
  for (std::size_t k = 1; k < e.size(); ++k) EXPECT_LT(e[k - 1], e[k]);
  EXPECT_GE(e.front(), 0);
  EXPECT_LT(e.back(), 100);
  EXPECT_EQ(SampleEntries(5, 10, rng).size(), 5u);
}

TEST(PolicyGradientCheck, CartPoleTinyNetwork) {
  train::Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions());
  trainer.RunEpisode();
  RandomStream rng({3});
  const std::vector<int> entries = SampleEntries(trainer.state().actor.size(), 100, rng);
  const Vec before = trainer.state().actor.values;
  const GradientReport r = CheckPolicyGradient(trainer, 8, true, 1e-5, entries, 1e-4);
  EXPECT_GE(r.FractionWithin(1e-3), 0.99);
  // the trainer itself is not advanced by the check
  EXPECT_EQ(trainer.state().actor.values, before);
  EXPECT_EQ(trainer.state().episode, 1);
}

TEST(Weights, ResolveAndFormat) {
  train::Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions());
  const nn::ParamSet& actor = trainer.state().actor;
  const WeightId w{"actor.mean.l0.weight", 5};
  const int idx = ResolveWeight(actor, w);
  EXPECT_EQ(idx, actor.slice(actor.Find("actor.mean.l0.weight")).offset + 5);
  EXPECT_EQ(FormatWeight(w), "actor.mean.l0.weight[5]");
  EXPECT_THROW(ResolveWeight(actor, {"actor.nope", 0}), std::invalid_argument);
  EXPECT_THROW(ResolveWeight(actor, {"actor.log_std", 1}), std::invalid_argument);
  EXPECT_THROW(ResolveWeight(actor, {"actor.log_std", -1}), std::invalid_argument);
  RandomStream rng({4});
  for (int k = 0; k < 20; ++k) EXPECT_NO_THROW(ResolveWeight(actor, SampleWeight(actor, rng)));
}

TEST(Landscape, EvaluatorNames) {
  EXPECT_EQ(ParseLossEvaluator(LossEvaluatorName(LossEvaluator::kFull)), LossEvaluator::kFull);
  EXPECT_EQ(ParseLossEvaluator(LossEvaluatorName(LossEvaluator::kSurrogate)), LossEvaluator::kSurrogate);
  EXPECT_THROW(ParseLossEvaluator("exact"), std::invalid_argument);
}

TEST(Landscape, ZeroDeltaIsUnperturbedLoss) {
  train::Trainer trainer(envs::Hopper::DefaultConfig(), TinyOptions());
  trainer.RunEpisode();
  const WeightId w{"actor.mean.l1.weight", 3};
  const std::vector<double> deltas = {-0.5, 0.0, 0.5};
  for (LossEvaluator ev : {LossEvaluator::kFull, LossEvaluator::kSurrogate}) {
    const LandscapeScan scan = ScanWeight(trainer, w, deltas, ev, 4, 9);
    ASSERT_EQ(scan.losses.size(), 3u);
    EXPECT_EQ(scan.losses[1], EvaluateLoss(trainer, trainer.state().actor.values, ev, 4, 9));
    const LandscapeScan again = ScanWeight(trainer, w, deltas, ev, 4, 9);
    EXPECT_EQ(scan.losses, again.losses);
    EXPECT_EQ(scan.deltas, deltas);
    EXPECT_EQ(scan.trajectories, 4);
    EXPECT_EQ(scan.seed, 9u);
  }
}

TEST(Landscape, RejectsBadInput) {
  train::Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions());
  const std::vector<double> ok = {-1, 0, 1};
  EXPECT_THROW(ScanWeight(trainer, {"actor.nope", 0}, ok, LossEvaluator::kFull, 2, 0),
               std::invalid_argument);
  const std::vector<double> unsorted = {0, -1, 1};
  EXPECT_THROW(ScanWeight(trainer, {"actor.log_std", 0}, unsorted, LossEvaluator::kFull, 2, 0),
               std::invalid_argument);
  const std::vector<double> repeated = {0, 0, 1};
  EXPECT_THROW(ScanWeight(trainer, {"actor.log_std", 0}, repeated, LossEvaluator::kFull, 2, 0),
               std::invalid_argument);
}

TEST(Landscape, CartPoleSurrogateIsFinite) {
  train::Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions());
  for (int k = 0; k < 3; ++k) trainer.RunEpisode();
  const LandscapeScan scan = ScanWeight(trainer, {"actor.mean.l0.weight", 0}, Linspace(-1, 1, 9),
                                        LossEvaluator::kSurrogate, 4, 1);
  for (double l : scan.losses) EXPECT_TRUE(std::isfinite(l));
}

TEST(Landscape, PlaneCenterMatchesUnperturbed) {
  train::Trainer trainer(envs::CartPole::DefaultConfig(), TinyOptions());
  RandomStream rng({5});
  const Vec a = RandomDirection(trainer.state().actor, rng);
  const Vec b = RandomDirection(trainer.state().actor, rng);
  EXPECT_EQ(a.size(), trainer.state().actor.size());
  const Eigen::MatrixXd plane = ScanPlane(trainer, a, b, {-1, 0, 1}, {-1, 0, 1},
                                          LossEvaluator::kFull, 2, 3);
  ASSERT_EQ(plane.rows(), 3);
  ASSERT_EQ(plane.cols(), 3);
  EXPECT_EQ(plane(1, 1), EvaluateLoss(trainer, trainer.state().actor.values, LossEvaluator::kFull, 2, 3));
}

TEST(Landscape, TotalVariationAndLinspace) {
  EXPECT_EQ(TotalVariation({}), 0);
  EXPECT_EQ(TotalVariation({3}), 0);
  EXPECT_DOUBLE_EQ(TotalVariation({0, 1, -1, 2}), 1 + 2 + 3);
  const std::vector<double> l = Linspace(-1, 1, 5);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l.front(), -1);
  EXPECT_EQ(l.back(), 1);
  EXPECT_EQ(l[2], 0);
}

TEST(Histogram, ZeroGradientIsSingleBin) {
  const std::vector<double> zeros(50, 0.0);
  const Histogram h = BuildHistogram(zeros, 20);
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.lo[0], 0);
  EXPECT_EQ(h.hi[0], 0);
  EXPECT_EQ(h.counts[0], 50);
}

TEST(Histogram, CountsAreConserved) {
  RandomStream rng({6});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(500);
    for (double& x : v) x = rng.Normal() * std::pow(10.0, rng.Uniform(-3, 3));
    const int bins = 1 + static_cast<int>(rng.Uniform(0, 60));
    const Histogram h = BuildHistogram(v, bins);
    EXPECT_EQ(h.total(), 500);
    ASSERT_EQ(static_cast<int>(h.counts.size()), bins);
    for (int b = 1; b < bins; ++b) EXPECT_EQ(h.lo[b], h.hi[b - 1]);
    EXPECT_NEAR(h.lo.front(), -h.hi.back(), 1e-12 * std::abs(h.hi.back()));
  }
  const std::vector<double> bad = {1.0, NAN};
  EXPECT_THROW(BuildHistogram(bad, 4), std::invalid_argument);
}

TEST(Histogram, GradientLogRoundTrip) {
  testing::TempDir dir("gradlog");
  RandomStream rng({7});
  const Vec g = testing::RandomVec(37, 1e6, rng);
  WriteGradientLog(dir.path(), 12, g);
  EXPECT_EQ(GradientLogPath(dir.path(), 12).filename(), "grad_12.bin");
  const std::vector<double> back = ReadGradientLog(dir.path(), 12);
  ASSERT_EQ(back.size(), 37u);
  for (int k = 0; k < 37; ++k) EXPECT_EQ(back[k], g[k]);
}

TEST(Histogram, MissingOrDamagedLogNamesEpisode) {
  testing::TempDir dir("gradlog_bad");
  try {
    ReadGradientLog(dir.path(), 40);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("40"), std::string::npos);
  }
  WriteGradientLog(dir.path(), 41, Vec::Ones(8));
  std::filesystem::resize_file(GradientLogPath(dir.path(), 41),
                               std::filesystem::file_size(GradientLogPath(dir.path(), 41)) - 4);
  try {
    ReadGradientLog(dir.path(), 41);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("41"), std::string::npos);
  }
}

TEST(Histogram, CsvLayout) {
  testing::TempDir dir("histcsv");
  const std::vector<double> v = {-1, -0.5, 0.5, 1};
  WriteHistogramCsv(dir.path() / "h.csv", BuildHistogram(v, 2));
  std::ifstream in(dir.path() / "h.csv");
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "bin_lo,bin_hi,count");
  EXPECT_EQ(row1, "-1,0,2");
  EXPECT_EQ(row2, "0,1,2");
  EXPECT_FALSE(std::getline(in, extra));
}

}  // namespace
}  // namespace shac::analysis
