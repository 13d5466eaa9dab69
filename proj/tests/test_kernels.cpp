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

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "semc/core.hpp"
#include "semc/kernels.hpp"
#include "semc/random.hpp"

namespace {

semc::Philox test_rng(std::uint64_t k) { return semc::make_stream(k, semc::StreamPurpose::test, 0); }

TEST(MetropolisSweep, PriorAcceptsEveryInBoundsProposal) {
  semc::FunctionProblem p("q", {{0.0, 1.0}, {0.0, 1.0}}, 100.0,
                          [](std::span<const double> t) { return t[0] * t[0] + t[1] * t[1]; });
  auto rng = test_rng(1);
  const std::vector<double> steps{0.01, 0.01};
  auto state = p.make_state({0.5, 0.5});
  for (int i = 0; i < 1000; ++i) {
    auto r = semc::metropolis_sweep(p, 0.0, state, steps, rng);
    EXPECT_TRUE(r.accepted[0] && r.accepted[1]);
    state = r.state;
  }
  EXPECT_TRUE(semc::validate_state(p, state));
}

TEST(MetropolisSweep, OutOfBoundsProposalsAreRejected) {
  semc::FunctionProblem p("flat", {{0.0, 1.0}}, 1.0, [](std::span<const double>) { return 0.0; });
  auto rng = test_rng(2);
  const std::vector<double> steps{10.0};
  auto state = p.make_state({0.5});
  int accepted = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto r = semc::metropolis_sweep(p, 0.0, state, steps, rng);
    if (!r.accepted[0]) {
      EXPECT_EQ(r.state.coordinates[0], state.coordinates[0]);
    }
    accepted += r.accepted[0];
    state = r.state;
    ASSERT_TRUE(p.in_support(state.coordinates));
  }
  // Proposals land in [0,1] with probability 1/20.
  EXPECT_NEAR(static_cast<double>(accepted) / n, 0.05, 0.006);
}

TEST(MetropolisSweep, UphillMoveAcceptedWithBoltzmannProbability) {
  // E = 1 left of 0.5 and 2 right of it; from just below 0.5 half the
  // proposals go uphill by 1 and are accepted with e^{-1}.
  semc::FunctionProblem p("step", {{0.0, 1.0}}, 1.0, [](std::span<const double> t) { return t[0] < 0.5 ? 1.0 : 2.0; });
  auto rng = test_rng(3);
  const std::vector<double> steps{1e-9};
  const auto start = p.make_state({0.5 - 1e-15});
  int accepted = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) accepted += semc::metropolis_sweep(p, 1.0, start, steps, rng).accepted[0];
  EXPECT_NEAR(static_cast<double>(accepted) / n, 0.5 + 0.5 * std::exp(-1.0), 0.005);
}

TEST(MetropolisSweep, DimensionMismatchThrows) {
  semc::FunctionProblem p("flat", {{0.0, 1.0}, {0.0, 1.0}}, 1.0, [](std::span<const double>) { return 0.0; });
  auto rng = test_rng(4);
  const std::vector<double> steps{0.1};
  EXPECT_THROW(semc::metropolis_sweep(p, 0.5, p.make_state({0.2, 0.2}), steps, rng), std::invalid_argument);
}

TEST(MetropolisSweep, PriorIsInvariantOnUnitSquare) {
  semc::FunctionProblem p("q", {{0.0, 1.0}, {0.0, 1.0}}, 1000.0,
                          [](std::span<const double> t) { return t[0] + t[1]; });
  auto rng = test_rng(5);
  const std::vector<double> steps{0.3, 0.3};
  auto state = p.make_state({0.1, 0.9});
  auto evaluator = p.make_evaluator();
  evaluator->load(state.coordinates);
  std::vector<std::uint64_t> counts(2, 0);
  double m0 = 0.0;
  double m1 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    semc::metropolis_sweep(p, 0.0, state, steps, rng, *evaluator, std::span<std::uint64_t>(counts));
    m0 += state.coordinates[0];
    m1 += state.coordinates[1];
  }
  EXPECT_NEAR(m0 / n, 0.5, 0.01);
  EXPECT_NEAR(m1 / n, 0.5, 0.01);
}

TEST(FlipStep, PriorAcceptsEveryFlip) {
  semc::FunctionProblem p("bits", 4, 50.0, [](std::span<const double> c) { return c[0] + 2 * c[1] + 3 * c[2]; });
  auto rng = test_rng(6);
  auto state = p.make_state({0, 0, 0, 0});
  for (int i = 0; i < 500; ++i) {
    auto r = semc::flip_step(p, 0.0, state, rng);
    EXPECT_TRUE(r.accepted);
    state = r.state;
  }
  EXPECT_TRUE(semc::validate_state(p, state));
}

TEST(FlipStep, DownhillFlipAlwaysAccepted) {
  semc::FunctionProblem p("bit", 1, 10.0, [](std::span<const double> c) { return 1.0 - c[0]; });
  auto rng = test_rng(7);
  const auto start = p.make_state({0.0});
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(semc::flip_step(p, 1.0, start, rng).accepted);
}

TEST(FlipStep, UphillAcceptanceMatchesHandArithmetic) {
  semc::FunctionProblem p("bit", 1, 700.0, [](std::span<const double> c) { return 0.001 * c[0]; });
  auto rng = test_rng(8);
  const auto start = p.make_state({0.0});
  int accepted = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) accepted += semc::flip_step(p, 1.0, start, rng).accepted;
  EXPECT_NEAR(static_cast<double>(accepted) / n, std::exp(-0.7), 0.01);
}

TEST(FlipStep, ContinuousProblemThrows) {
  semc::FunctionProblem p("flat", {{0.0, 1.0}}, 1.0, [](std::span<const double>) { return 0.0; });
  auto rng = test_rng(9);
  EXPECT_THROW(semc::flip_step(p, 1.0, p.make_state({0.5}), rng), std::invalid_argument);
}

TEST(FlipStep, DetailedBalanceOnFiveBitToy) {
  std::vector<double> table(32);
  auto table_rng = test_rng(10);
  for (auto& e : table) e = semc::uniform01(table_rng);
  auto index = [](std::span<const double> c) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < c.size(); ++j) k |= static_cast<std::size_t>(c[j]) << j;
    return k;
  };
  const double n_data = 3.0;
  semc::FunctionProblem p("toy", 5, n_data, [&](std::span<const double> c) { return table[index(c)]; });
  std::vector<double> exact(32);
  double z = 0.0;
  for (std::size_t k = 0; k < 32; ++k) z += exact[k] = std::exp(-n_data * table[k]);
  for (auto& v : exact) v /= z;

  auto rng = test_rng(11);
  auto state = p.make_state({0, 0, 0, 0, 0});
  auto evaluator = p.make_evaluator();
  evaluator->load(state.coordinates);
  std::vector<double> visits(32, 0.0);
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    semc::flip_step(p, 1.0, state, rng, *evaluator);
    visits[index(state.coordinates)] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t k = 0; k < 32; ++k) tv += std::abs(visits[k] / n - exact[k]);
  EXPECT_LE(0.5 * tv, 0.02);
}

TEST(ExchangeAcceptProb, Examples) {
  EXPECT_EQ(semc::exchange_accept_prob(10.0, 0.6, 0.5, 0.7, 0.7), 1.0);
  EXPECT_EQ(semc::exchange_accept_prob(10.0, 0.6, 0.5, 1.0, 0.5), 1.0);
  EXPECT_NEAR(semc::exchange_accept_prob(10.0, 0.6, 0.5, 0.5, 1.0), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(semc::exchange_accept_prob(10.0, 0.6, 0.5, 0.5, 1.0), 0.6065, 1e-4);
}

TEST(ExchangeAcceptProb, MinOfDirectedProbabilities) {
  auto rng = test_rng(12);
  for (int i = 0; i < 200; ++i) {
    const double e1 = semc::uniform01(rng);
    const double e2 = semc::uniform01(rng);
    const double lo = 0.3 * semc::uniform01(rng);
    const double hi = lo + 0.01 + semc::uniform01(rng) * (1.0 - lo - 0.01);
    const double n = 50.0;
    const double a = semc::exchange_accept_prob(n, hi, lo, e1, e2);
    const double b = semc::exchange_accept_prob(n, hi, lo, e2, e1);
    EXPECT_NEAR(std::min(a, b), std::exp(-(hi - lo) * n * std::abs(e1 - e2)), 1e-12);
    EXPECT_EQ(std::max(a, b), 1.0);
  }
}

TEST(ExchangeAcceptProb, RequiresOrderedBetas) {
  EXPECT_THROW(semc::exchange_accept_prob(1.0, 0.5, 0.5, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(semc::exchange_accept_prob(1.0, 0.4, 0.5, 0.0, 0.0), std::invalid_argument);
}

TEST(TryExchange, CertainOutcomes) {
  auto rng = test_rng(13);
  semc::ParameterState a{{0.1}, 1.0};
  semc::ParameterState b{{0.2}, 2.0};
  EXPECT_TRUE(semc::try_exchange(rng, 1.0, a, b));
  EXPECT_EQ(a.coordinates[0], 0.2);
  EXPECT_EQ(a.energy, 2.0);
  EXPECT_EQ(b.energy, 1.0);
  EXPECT_FALSE(semc::try_exchange(rng, 0.0, a, b));
  EXPECT_EQ(a.energy, 2.0);
  EXPECT_THROW(semc::try_exchange(rng, 1.5, a, b), std::invalid_argument);
}

TEST(TryExchange, EmpiricalSwapRate) {
  auto rng = test_rng(14);
  semc::ParameterState a{{0.1}, 1.0};
  semc::ParameterState b{{0.2}, 2.0};
  int swaps = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) swaps += semc::try_exchange(rng, 0.6065, a, b);
  EXPECT_NEAR(static_cast<double>(swaps) / n, 0.6065, 0.01);
}

}  // namespace
