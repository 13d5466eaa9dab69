// Copyright 2026 The semc Authors
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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "semc/core.hpp"
#include "semc/metrics.hpp"
#include "semc/problems/bimodal.hpp"
#include "semc/random.hpp"

namespace {

semc::Philox test_rng(std::uint64_t k) { return semc::make_stream(k, semc::StreamPurpose::test, 4); }

semc::Histogram random_histogram(semc::Philox& rng, std::size_t bins) {
  semc::Histogram h{0.0, static_cast<double>(bins) * 0.1, 0.1, std::vector<double>(bins)};
  double total = 0.0;
  for (auto& m : h.masses) total += m = semc::uniform01(rng) < 0.3 ? 0.0 : semc::uniform01(rng);
  if (total == 0.0) {
    h.masses[0] = total = 1.0;
  }
  for (auto& m : h.masses) m /= total;
  return h;
}

TEST(BuildHistogram, SingleBin) {
  const auto h = semc::build_histogram(std::vector<double>{0.31, 0.32, 0.35}, 0.0, 1.0, 0.1);
  ASSERT_EQ(h.bins(), 10u);
  EXPECT_EQ(h.masses[3], 1.0);
}

TEST(BuildHistogram, ThreeToOneSplit) {
  const auto h = semc::build_histogram(std::vector<double>{0.1, 0.2, 0.3, 0.7}, 0.0, 1.0, 0.5);
  EXPECT_EQ(h.masses, (std::vector<double>{0.75, 0.25}));
}

TEST(BuildHistogram, LastBinIsClosed) {
  const auto h = semc::build_histogram(std::vector<double>{1.0, 0.0}, 0.0, 1.0, 0.25);
  EXPECT_EQ(h.masses.back(), 0.5);
  EXPECT_EQ(h.masses.front(), 0.5);
}

TEST(BuildHistogram, OutOfRangeIsAnError) {
  EXPECT_THROW(semc::build_histogram(std::vector<double>{1.01}, 0.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(semc::build_histogram(std::vector<double>{-0.01}, 0.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(semc::build_histogram(std::vector<double>{0.5}, 0.0, 1.0, 0.3), std::invalid_argument);
  EXPECT_THROW(semc::build_histogram(std::vector<double>{0.5}, 1.0, 0.0, 0.1), std::invalid_argument);
}

TEST(BuildHistogram, UniformDraws) {
  auto rng = test_rng(1);
  std::vector<double> v(1000000);
  for (auto& x : v) x = semc::uniform01(rng);
  const auto h = semc::build_histogram(v, 0.0, 1.0, 0.1);
  double total = 0.0;
  for (double m : h.masses) {
    EXPECT_NEAR(m, 0.1, 0.002);
    total += m;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BuildHistogram, PermutationInvariant) {
  auto rng = test_rng(2);
  std::vector<double> v(500);
  for (auto& x : v) x = semc::uniform01(rng);
  auto w = v;
  semc::shuffle(std::span<double>(w), rng);
  EXPECT_EQ(semc::build_histogram(v, 0.0, 1.0, 0.05).masses, semc::build_histogram(w, 0.0, 1.0, 0.05).masses);
}

TEST(Wasserstein1, IdenticalIsZero) {
  auto rng = test_rng(3);
  const auto h = random_histogram(rng, 20);
  EXPECT_EQ(semc::wasserstein1(h, h), 0.0);
}

TEST(Wasserstein1, PointMassesGiveDistance) {
  const auto a = semc::build_histogram(std::vector<double>{0.2}, 0.0, 1.0, 0.1);
  const auto b = semc::build_histogram(std::vector<double>{0.5}, 0.0, 1.0, 0.1);
  EXPECT_NEAR(semc::wasserstein1(a, b), 0.3, 1e-12);
}

TEST(Wasserstein1, BinningMismatchThrows) {
  const auto a = semc::build_histogram(std::vector<double>{0.2}, 0.0, 1.0, 0.1);
  const auto b = semc::build_histogram(std::vector<double>{0.2}, 0.0, 1.0, 0.05);
  EXPECT_THROW(semc::wasserstein1(a, b), std::invalid_argument);
}

TEST(Wasserstein1, MetricAxioms) {
  auto rng = test_rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_histogram(rng, 15);
    const auto b = random_histogram(rng, 15);
    const auto c = random_histogram(rng, 15);
    const double ab = semc::wasserstein1(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_EQ(ab, semc::wasserstein1(b, a));
    if (a.masses != b.masses) {
      EXPECT_GT(ab, 0.0);
    }
    EXPECT_LE(semc::wasserstein1(a, c), ab + semc::wasserstein1(b, c) + 1e-12);
  }
}

TEST(SortedMuHistograms, SortsWithinSample) {
  semc::EnsembleSnapshot s;
  s.dimension = 6;
  s.coordinates = {1.0, 0.8, 100.0, 1.0, 0.2, 100.0,   // μ = (0.8, 0.2)
                   1.0, 0.1, 100.0, 1.0, 0.9, 100.0};  // μ = (0.1, 0.9)
  s.energies = {0.0, 0.0};
  const auto h = semc::sorted_mu_histograms(s, 0.0, 1.0, 0.1);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].masses[2], 0.5);
  EXPECT_EQ(h[0].masses[1], 0.5);
  EXPECT_EQ(h[1].masses[8], 0.5);
  EXPECT_EQ(h[1].masses[9], 0.5);
  EXPECT_EQ(semc::mean_slot_wasserstein(h, h), 0.0);
}

TEST(StepSizeScalingSlope, ExactPowerLaw) {
  semc::TemperatureLadder ladder{{0.0}, {{}}};
  for (double b : {0.001, 0.01, 0.05, 0.2, 0.6, 1.0}) {
    ladder.betas.push_back(b);
    ladder.step_sizes.push_back({0.3 * std::pow(b, -0.5), 2.0 * std::pow(b, -0.5)});
  }
  EXPECT_NEAR(semc::step_size_scaling_slope(ladder, 0.01), -0.5, 1e-12);
}

TEST(StepSizeScalingSlope, ConstantIsZero) {
  semc::TemperatureLadder ladder{{0.0, 0.1, 0.5, 1.0}, {{}, {0.2}, {0.2}, {0.2}}};
  EXPECT_NEAR(semc::step_size_scaling_slope(ladder, 0.01), 0.0, 1e-15);
}

TEST(StepSizeScalingSlope, TooFewRungsThrows) {
  semc::TemperatureLadder ladder{{0.0, 0.001, 0.5, 1.0}, {{}, {0.2}, {0.2}, {0.2}}};
  EXPECT_THROW(semc::step_size_scaling_slope(ladder, 0.01), std::invalid_argument);
}

TEST(ReferenceMarginalHistogram, BimodalModeMassesAgree) {
  const semc::BimodalProblem p;
  const auto h = semc::reference_marginal_histogram(p, 0, 0.001, 4, 512);
  double left = 0.0;
  for (std::size_t i = 0; i < 500; ++i) left += h.masses[i];
  EXPECT_NEAR(left, semc::bimodal_mode_masses(p.spec()).left, 1e-3);
}

}  // namespace
