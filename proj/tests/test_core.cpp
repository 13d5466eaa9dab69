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
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "semc/core.hpp"
#include "semc/random.hpp"

namespace {

semc::FunctionProblem square_problem(double n = 10.0) {
  return semc::FunctionProblem("square", {{0.0, 1.0}, {0.0, 1.0}}, n,
                               [](std::span<const double> t) { return t[0] * t[0] + t[1]; });
}

TEST(TemperedLogDensityRatio, PriorIsZero) {
  const auto p = square_problem();
  EXPECT_EQ(semc::tempered_log_density_ratio(p, 0.0, 5.0, -3.0), 0.0);
}

TEST(TemperedLogDensityRatio, HandArithmetic) {
  const auto p = square_problem(10.0);
  EXPECT_NEAR(semc::tempered_log_density_ratio(p, 1.0, 0.2, 0.5), 3.0, 1e-12);
}

TEST(TemperedLogDensityRatio, EqualEnergies) {
  const auto p = square_problem(30000.0);
  EXPECT_EQ(semc::tempered_log_density_ratio(p, 0.5, 0.7, 0.7), 0.0);
}

TEST(TemperedLogDensityRatio, RejectsBadInput) {
  const auto p = square_problem();
  EXPECT_THROW(semc::tempered_log_density_ratio(p, 0.5, std::nan(""), 0.0), std::invalid_argument);
  EXPECT_THROW(semc::tempered_log_density_ratio(p, 0.5, 0.0, std::numeric_limits<double>::infinity()),
               std::invalid_argument);
  EXPECT_THROW(semc::tempered_log_density_ratio(p, 1.5, 0.0, 0.0), std::invalid_argument);
}

TEST(TemperedLogDensityRatio, AntisymmetricAndLinearInBeta) {
  const auto p = square_problem(7.0);
  semc::Philox rng(1, 0);
  for (int i = 0; i < 100; ++i) {
    const double a = semc::uniform01(rng);
    const double b = semc::uniform01(rng);
    const double b1 = 0.5 * semc::uniform01(rng);
    const double b2 = 0.5 * semc::uniform01(rng);
    EXPECT_EQ(semc::tempered_log_density_ratio(p, b1, a, b), -semc::tempered_log_density_ratio(p, b1, b, a));
    EXPECT_NEAR(semc::tempered_log_density_ratio(p, b1 + b2, a, b),
                semc::tempered_log_density_ratio(p, b1, a, b) + semc::tempered_log_density_ratio(p, b2, a, b), 1e-12);
  }
}

TEST(ValidateState, CorrectCacheInBounds) {
  const auto p = square_problem();
  EXPECT_TRUE(semc::validate_state(p, p.make_state({0.5, 0.5})));
}

TEST(ValidateState, OutOfBounds) {
  const auto p = square_problem();
  semc::ParameterState s{{1.5, 0.5}, 0.0};
  s.energy = p.energy(s.coordinates);
  EXPECT_FALSE(semc::validate_state(p, s));
}

TEST(ValidateState, StaleCache) {
  const auto p = square_problem();
  auto s = p.make_state({0.5, 0.5});
  s.energy = std::nextafter(s.energy, 1.0);
  EXPECT_FALSE(semc::validate_state(p, s));
}

TEST(ValidateState, BinarySupport) {
  semc::FunctionProblem p("bits", 3, 1.0, [](std::span<const double> c) { return c[0] + c[1] + c[2]; });
  EXPECT_TRUE(semc::validate_state(p, p.make_state({1.0, 0.0, 1.0})));
  semc::ParameterState s{{0.5, 0.0, 1.0}, 1.5};
  EXPECT_FALSE(semc::validate_state(p, s));
}

TEST(TargetProblem, PriorSamplesStayInSupport) {
  const auto p = square_problem();
  semc::FunctionProblem bits("bits", 4, 1.0, [](std::span<const double>) { return 0.0; });
  semc::Philox rng(2, 0);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(semc::validate_state(p, p.sample_prior_state(rng)));
    EXPECT_TRUE(semc::validate_state(bits, bits.sample_prior_state(rng)));
  }
}

TEST(TargetProblem, RejectsBadConstruction) {
  auto zero = [](std::span<const double>) { return 0.0; };
  EXPECT_THROW(semc::FunctionProblem("x", std::vector<semc::Interval>{}, 1.0, zero), std::invalid_argument);
  EXPECT_THROW(semc::FunctionProblem("x", {{1.0, 0.0}}, 1.0, zero), std::invalid_argument);
  EXPECT_THROW(semc::FunctionProblem("x", {{0.0, 1.0}}, -1.0, zero), std::invalid_argument);
  EXPECT_THROW(semc::FunctionProblem("x", std::size_t{0}, 1.0, zero), std::invalid_argument);
}

TEST(TemperatureLadder, Validation) {
  semc::TemperatureLadder good{{0.0, 0.3, 1.0}, {{}, {0.1}, {0.05}}};
  EXPECT_NO_THROW(good.validate());
  auto not_started = good;
  not_started.betas[0] = 0.1;
  EXPECT_THROW(not_started.validate(), std::invalid_argument);
  auto not_increasing = good;
  not_increasing.betas[1] = 0.0;
  EXPECT_THROW(not_increasing.validate(), std::invalid_argument);
  auto incomplete = good;
  incomplete.betas[2] = 0.9;
  EXPECT_THROW(incomplete.validate(true), std::invalid_argument);
  EXPECT_NO_THROW(incomplete.validate(false));
  auto bad_step = good;
  bad_step.step_sizes[1][0] = 0.0;
  EXPECT_THROW(bad_step.validate(), std::invalid_argument);
}

TEST(EnsembleSnapshot, RowAccess) {
  semc::EnsembleSnapshot s{0.5, 2, {1, 2, 3, 4, 5, 6}, {0.1, 0.2, 0.3}};
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.state(1)[0], 3.0);
  EXPECT_EQ(s.coordinate(1), (std::vector<double>{2, 4, 6}));
}

}  // namespace
