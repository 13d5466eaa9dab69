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

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semc/core.hpp"
#include "semc/random.hpp"

namespace semc {

namespace detail {

/// Metropolis accept for log acceptance ratio `log_ratio`. No uniform is drawn
/// when the move is accepted with certainty.
template <class Rng>
bool metropolis_accept(double log_ratio, Rng& rng) {
  if (log_ratio >= 0.0) return true;
  return uniform01(rng) < std::exp(log_ratio);
}

}  // namespace detail

/// One sweep of coordinate-wise random-walk Metropolis at inverse temperature
/// `beta`, visiting coordinates in ascending order with proposals
/// θ_j + U(-ε_j, ε_j). Out-of-bounds proposals are rejected.
///
/// `evaluator` must be loaded with `state` and stays loaded with it.
/// `accepted[j]` is incremented for every accepted move of coordinate j.
template <class Rng>
void metropolis_sweep(const TargetProblem& problem, double beta, ParameterState& state, std::span<const double> steps,
                      Rng& rng, CoordinateEvaluator& evaluator, std::span<std::uint64_t> accepted) {
  const std::size_t dim = problem.dimension();
  const auto bounds = problem.bounds();
  const double scale = beta * problem.data_size();
  for (std::size_t j = 0; j < dim; ++j) {
    const double proposal = state.coordinates[j] + steps[j] * (2.0 * uniform01(rng) - 1.0);
    if (!bounds[j].contains(proposal)) continue;
    const double e_new = evaluator.propose(j, proposal);
    const double log_ratio = scale == 0.0 ? 0.0 : -scale * (e_new - state.energy);
    if (detail::metropolis_accept(log_ratio, rng)) {
      evaluator.commit();
      state.coordinates[j] = proposal;
      state.energy = e_new;
      ++accepted[j];
    }
  }
}

struct SweepResult {
  ParameterState state;
  std::vector<bool> accepted;
};

/// Value-semantics convenience form of metropolis_sweep.
template <class Rng>
SweepResult metropolis_sweep(const TargetProblem& problem, double beta, ParameterState state,
                             std::span<const double> steps, Rng& rng) {
  if (problem.kind() != ProblemKind::continuous_box) {
    throw std::invalid_argument("metropolis_sweep requires a continuous problem");
  }
  if (state.coordinates.size() != problem.dimension() || steps.size() != problem.dimension()) {
    throw std::invalid_argument("metropolis_sweep: dimension mismatch");
  }
  auto evaluator = problem.make_evaluator();
  evaluator->load(state.coordinates);
  std::vector<std::uint64_t> counts(problem.dimension(), 0);
  metropolis_sweep(problem, beta, state, steps, rng, *evaluator, std::span<std::uint64_t>(counts));
  SweepResult result{std::move(state), std::vector<bool>(counts.size())};
  for (std::size_t j = 0; j < counts.size(); ++j) result.accepted[j] = counts[j] != 0;
  return result;
}

/// Flips one uniformly chosen bit, accepted with min(1, exp(-β N ΔE)).
/// `evaluator` must be loaded with `state`. Returns whether the flip was
/// accepted.
template <class Rng>
bool flip_step(const TargetProblem& problem, double beta, ParameterState& state, Rng& rng,
               CoordinateEvaluator& evaluator) {
  const auto j = static_cast<std::size_t>(uniform_index(rng, problem.dimension()));
  const double flipped = 1.0 - state.coordinates[j];
  const double e_new = evaluator.propose(j, flipped);
  const double scale = beta * problem.data_size();
  const double log_ratio = scale == 0.0 ? 0.0 : -scale * (e_new - state.energy);
  if (!detail::metropolis_accept(log_ratio, rng)) return false;
  evaluator.commit();
  state.coordinates[j] = flipped;
  state.energy = e_new;
  return true;
}

struct FlipResult {
  ParameterState state;
  bool accepted = false;
};

template <class Rng>
FlipResult flip_step(const TargetProblem& problem, double beta, ParameterState state, Rng& rng) {
  if (problem.kind() != ProblemKind::binary) throw std::invalid_argument("flip_step requires a binary problem");
  if (state.coordinates.size() != problem.dimension()) throw std::invalid_argument("flip_step: dimension mismatch");
  auto evaluator = problem.make_evaluator();
  evaluator->load(state.coordinates);
  const bool accepted = flip_step(problem, beta, state, rng, *evaluator);
  return {std::move(state), accepted};
}

/// min(1, exp((β_hi - β_lo) N (E_hi - E_lo))) where E_hi is the energy of the
/// state currently at the colder rung (larger β) and E_lo the state at the
/// hotter rung.
inline double exchange_accept_prob(double data_size, double beta_hi, double beta_lo, double e_at_hi_rung,
                                   double e_at_lo_rung) {
  if (!(beta_hi > beta_lo)) throw std::invalid_argument("exchange_accept_prob: beta_hi must exceed beta_lo");
  const double log_v = (beta_hi - beta_lo) * data_size * (e_at_hi_rung - e_at_lo_rung);
  if (log_v >= 0.0) return 1.0;
  return std::exp(log_v);
}

/// Draws the exchange decision: true with probability `prob`. Certain
/// outcomes consume no randomness.
template <class Rng>
bool exchange_decision(double prob, Rng& rng) {
  if (prob >= 1.0) return true;
  if (prob <= 0.0) return false;
  return uniform01(rng) < prob;
}

/// Swaps `a` and `b` (with their cached energies) with probability `prob`.
template <class Rng>
bool try_exchange(Rng& rng, double prob, ParameterState& a, ParameterState& b) {
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("try_exchange: prob must lie in [0, 1]");
  if (!exchange_decision(prob, rng)) return false;
  std::swap(a, b);
  return true;
}

}  // namespace semc
