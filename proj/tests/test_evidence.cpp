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
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "semc/core.hpp"
#include "semc/evidence.hpp"
#include "semc/problems/bimodal.hpp"
#include "semc/random.hpp"

namespace {

semc::EnsembleSnapshot energies_at(double beta, std::vector<double> e) {
  semc::EnsembleSnapshot s;
  s.beta = beta;
  s.dimension = 1;
  s.energies = std::move(e);
  return s;
}

TEST(EstimateFreeEnergy, ZeroEnergyGivesZero) {
  std::vector<semc::EnsembleSnapshot> s{energies_at(0.0, {0, 0, 0}), energies_at(0.4, {0, 0}), energies_at(1.0, {0})};
  EXPECT_EQ(semc::estimate_free_energy(s, 100.0), 0.0);
}

TEST(EstimateFreeEnergy, SingleGapHandValue) {
  std::vector<semc::EnsembleSnapshot> s{energies_at(0.0, {0.0, std::log(4.0)}), energies_at(1.0, {0.0})};
  EXPECT_NEAR(semc::estimate_free_energy(s, 1.0), std::log(1.6), 1e-12);
  EXPECT_NEAR(semc::estimate_free_energy(s, 1.0), 0.4700, 1e-4);
}

TEST(EstimateFreeEnergy, RejectsMalformedInput) {
  std::vector<semc::EnsembleSnapshot> one{energies_at(0.0, {1.0})};
  EXPECT_THROW(semc::estimate_free_energy(one, 1.0), std::invalid_argument);
  std::vector<semc::EnsembleSnapshot> empty{energies_at(0.0, {}), energies_at(1.0, {1.0})};
  EXPECT_THROW(semc::estimate_free_energy(empty, 1.0), std::invalid_argument);
  std::vector<semc::EnsembleSnapshot> short_ladder{energies_at(0.0, {1.0}), energies_at(0.5, {1.0})};
  EXPECT_THROW(semc::estimate_free_energy(short_ladder, 1.0), std::invalid_argument);
}

TEST(EstimateFreeEnergy, ShiftInvariance) {
  auto rng = semc::make_stream(1, semc::StreamPurpose::test, 2);
  std::vector<semc::EnsembleSnapshot> s;
  const std::vector<double> betas{0.0, 0.01, 0.1, 0.4, 1.0};
  for (double b : betas) {
    std::vector<double> e(300);
    for (auto& v : e) v = 1.0 + semc::uniform01(rng);
    s.push_back(energies_at(b, e));
  }
  const double n = 30000.0;
  const double delta = 0.37;
  auto shifted = s;
  for (auto& snap : shifted) {
    for (auto& v : snap.energies) v += delta;
  }
  const double f = semc::estimate_free_energy(s, n);
  const double g = semc::estimate_free_energy(shifted, n);
  EXPECT_NEAR(g - f, n * delta, 1e-12 * n * delta * 10);
}

TEST(EstimateFreeEnergy, TermsBracketedByEnergyRange) {
  auto rng = semc::make_stream(2, semc::StreamPurpose::test, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> e(50);
    for (auto& v : e) v = 3.0 * semc::uniform01(rng);
    const double scale_beta = semc::uniform01(rng);
    const double n = 20.0;
    const auto term = semc::stepping_stone_term(e, scale_beta, n);
    const double lo = n * scale_beta * *std::min_element(e.begin(), e.end());
    const double hi = n * scale_beta * *std::max_element(e.begin(), e.end());
    EXPECT_GE(term.value(), lo - 1e-12);
    EXPECT_LE(term.value(), hi + 1e-12);
  }
}

TEST(EstimateFreeEnergy, ExtraExactRungKeepsExpectation) {
  // E = θ²/2 on [-5, 5], N = 1, exact draws at β = 0 and β = 1/2.
  const double half_width = 5.0;
  const double exact = std::log(2.0 * half_width) -
                       std::log(std::sqrt(2.0 * std::numbers::pi) * std::erf(half_width / std::sqrt(2.0)));
  auto rng = semc::make_stream(3, semc::StreamPurpose::test, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int reps = 200;
  const std::size_t t = 2000;
  std::vector<double> one_gap;
  std::vector<double> two_gap;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> prior(t);
    std::vector<double> mid(t);
    for (auto& e : prior) {
      const double x = semc::uniform(rng, -half_width, half_width);
      e = 0.5 * x * x;
    }
    for (auto& e : mid) {
      double x;
      do {
        x = std::sqrt(2.0) * normal(rng);
      } while (std::abs(x) > half_width);
      e = 0.5 * x * x;
    }
    std::vector<semc::EnsembleSnapshot> a{energies_at(0.0, prior), energies_at(1.0, {0.0})};
    std::vector<semc::EnsembleSnapshot> b{energies_at(0.0, prior), energies_at(0.5, mid), energies_at(1.0, {0.0})};
    one_gap.push_back(semc::estimate_free_energy(a, 1.0));
    two_gap.push_back(semc::estimate_free_energy(b, 1.0));
  }
  auto mean_and_se = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    return std::pair{m, std::sqrt(s2 / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
  };
  const auto [m1, se1] = mean_and_se(one_gap);
  const auto [m2, se2] = mean_and_se(two_gap);
  EXPECT_NEAR(m1, exact, 3.0 * se1 + 1e-3);
  EXPECT_NEAR(m2, exact, 3.0 * se2 + 1e-3);
  EXPECT_NEAR(m1, m2, 3.0 * std::hypot(se1, se2) + 1e-3);
}

TEST(LogSumExp, MatchesDirectSum) {
  semc::LogSumExp acc;
  double direct = 0.0;
  for (double x : {-1.0, 2.0, 0.5, 1.5}) {
    acc.add(x);
    direct += std::exp(x);
  }
  EXPECT_NEAR(acc.value(), std::log(direct), 1e-14);
}

TEST(QuadratureReference, ZeroEnergyIsZero) {
  semc::FunctionProblem p("zero", {{0.0, 1.0}, {0.0, 1.0}}, 30000.0, [](std::span<const double>) { return 0.0; });
  EXPECT_NEAR(semc::reference_free_energy_quadrature(p, 64), 0.0, 1e-12);
}

TEST(QuadratureReference, BimodalMatchesClosedForm) {
  const semc::BimodalProblem p;
  const auto q = semc::reference_free_energy_quadrature_converged(p);
  const double r = 1.001;
  const double n = 30000.0;
  const double closed = -std::log(std::numbers::pi / n * (1.0 / std::sqrt(r) + std::exp(-n * (r - 1.0) / 16.0)));
  EXPECT_NEAR(q.free_energy, closed, 1e-3);
  EXPECT_NEAR(q.free_energy, 9.022, 1e-3);
  EXPECT_LT(q.last_change, 1e-3);
}

TEST(QuadratureReference, IsotropicGaussianClosedForm) {
  semc::FunctionProblem p("gauss", {{0.0, 1.0}, {0.0, 1.0}}, 1e4, [](std::span<const double> t) {
    return (t[0] - 0.5) * (t[0] - 0.5) + (t[1] - 0.5) * (t[1] - 0.5);
  });
  const auto q = semc::reference_free_energy_quadrature_converged(p);
  EXPECT_NEAR(q.free_energy, std::log(1e4 / std::numbers::pi), 1e-3);
}

TEST(QuadratureReference, RequiresTwoDimensionalBox) {
  semc::FunctionProblem p("one", {{0.0, 1.0}}, 1.0, [](std::span<const double>) { return 0.0; });
  EXPECT_THROW(semc::reference_free_energy_quadrature(p, 10), std::invalid_argument);
}

TEST(EnumerationReference, FlatSingleBitIsZero) {
  semc::FunctionProblem p("bit", 1, 1.0, [](std::span<const double>) { return 0.0; });
  EXPECT_EQ(semc::reference_free_energy_enumeration(p), 0.0);
}

TEST(EnumerationReference, TwoBitHandValue) {
  semc::FunctionProblem p("bits", 2, 1.0,
                          [](std::span<const double> c) { return (c[0] + c[1]) * std::log(2.0); });
  EXPECT_NEAR(semc::reference_free_energy_enumeration(p), std::log(16.0 / 9.0), 1e-12);
}

TEST(EnumerationReference, RefusesLargeDimension) {
  semc::FunctionProblem p("bits", 21, 1.0, [](std::span<const double>) { return 0.0; });
  EXPECT_THROW(semc::reference_free_energy_enumeration(p), std::invalid_argument);
}

}  // namespace
