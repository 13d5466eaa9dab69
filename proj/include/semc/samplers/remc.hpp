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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semc/adaptation.hpp"
#include "semc/core.hpp"
#include "semc/evidence.hpp"
#include "semc/kernels.hpp"
#include "semc/random.hpp"
#include "semc/samplers/sequential.hpp"
#include "semc/worker_pool.hpp"

namespace semc {

struct RemcConfig {
  /// Number of rungs, including β = 0 and β = 1.
  std::size_t L = 30;
  /// Geometric ratio γ of β_l = γ^{l-L}; empty picks β_2 so that the
  /// estimated exchange rate of the hottest pair is auto_j_target.
  std::optional<double> gamma;
  /// Explicit inverse temperatures (overrides gamma when non-empty).
  std::vector<double> betas;
  std::size_t burn_in = 10000;
  std::size_t samples = 10000;
  std::size_t exchange_every = 1;
  /// Per-rung starting step sizes (rung 0 ignored); empty runs a pilot per rung.
  std::vector<std::vector<double>> initial_steps;
  RobbinsMonroConfig robbins_monro{.update_every = 20};
  double auto_j_target = 0.5;
  std::size_t auto_pilot_samples = 10000;
  std::size_t pilot_sweeps = 500;
  StateRetention retention = StateRetention::all_rungs;
  std::size_t threads = 1;

  void validate() const {
    if (L < 2) throw std::invalid_argument("REMC: L must be at least 2");
    if (burn_in < 1 || samples < 1) throw std::invalid_argument("REMC: burn-in and sample counts must be at least 1");
    if (exchange_every == 0) throw std::invalid_argument("REMC: exchange interval must be positive");
    if (gamma && !(*gamma > 1.0 && std::isfinite(*gamma))) throw std::invalid_argument("REMC: gamma must exceed 1");
    if (!betas.empty() && betas.size() != L) throw std::invalid_argument("REMC: explicit betas must have L entries");
    if (!initial_steps.empty() && initial_steps.size() != L) throw std::invalid_argument("REMC: initial steps must have L entries");
    if (!(auto_j_target > 0.0 && auto_j_target < 1.0)) throw std::invalid_argument("REMC: auto target must lie in (0,1)");
    if (auto_pilot_samples < 2) throw std::invalid_argument("REMC: auto pilot needs at least 2 samples");
    robbins_monro.validate();
  }
};

/// Geometric ladder β_l = γ^{l-L} (1-based l = 2..L) with β_1 = 0.
inline std::vector<double> geometric_ladder(std::size_t L, double gamma) {
  std::vector<double> betas(L, 0.0);
  for (std::size_t i = 1; i < L; ++i) betas[i] = std::pow(gamma, static_cast<double>(i + 1) - static_cast<double>(L));
  betas[L - 1] = 1.0;
  return betas;
}

/// γ such that β_2 = γ^{2-L} reaches the target exchange rate with the prior.
/// Falls back to γ = 2 when the prior energies are constant.
inline double auto_gamma(const TargetProblem& problem, std::size_t L, double j_target, std::size_t pilot_samples,
                         std::uint64_t seed) {
  if (L < 3) return 2.0;
  auto rng = make_stream(seed, StreamPurpose::prior, 0, 1);
  std::vector<double> energies(pilot_samples);
  std::vector<double> theta(problem.dimension());
  for (auto& e : energies) {
    problem.sample_prior(rng, std::span<double>(theta));
    e = problem.energy(theta);
  }
  const double beta2 = propose_next_beta(energies, 0.0, problem.data_size(), ExchangeTargetConfig{.j_target = j_target});
  if (beta2 >= 1.0) return 2.0;
  return std::pow(beta2, -1.0 / static_cast<double>(L - 2));
}

/// Replica exchange Monte Carlo. Rung 0 is redrawn from the prior every
/// iteration; every other rung takes one kernel step; adjacent pairs exchange
/// in ascending order every `exchange_every` iterations. Step sizes adapt by
/// Robbins-Monro during burn-in only.
inline RunResult run_remc(const TargetProblem& problem, const RemcConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const auto start_time = std::chrono::steady_clock::now();
  const bool binary = problem.kind() == ProblemKind::binary;
  const std::size_t dim = problem.dimension();
  const std::size_t counters = binary ? 1 : dim;
  const double n = problem.data_size();
  const std::size_t L = cfg.L;

  RunResult result;
  result.sampler = "remc";
  result.problem = problem.label();
  result.seed = seed;
  if (!cfg.betas.empty()) {
    result.ladder.betas = cfg.betas;
  } else {
    const double gamma = cfg.gamma ? *cfg.gamma : auto_gamma(problem, L, cfg.auto_j_target, cfg.auto_pilot_samples, seed);
    result.ladder.betas = geometric_ladder(L, gamma);
  }
  const auto& betas = result.ladder.betas;
  {
    TemperatureLadder check{betas, std::vector<std::vector<double>>(L)};
    check.validate(true);
  }

  std::vector<std::vector<double>> steps(L);
  if (!binary) {
    for (std::size_t l = 1; l < L; ++l) {
      if (!cfg.initial_steps.empty()) {
        steps[l] = cfg.initial_steps[l];
        if (steps[l].size() != dim) throw std::invalid_argument("REMC: initial step size dimension mismatch");
      } else {
        auto rng = make_stream(seed, StreamPurpose::pilot, l);
        steps[l] = tune_step_sizes(problem, betas[l], problem.sample_prior_state(rng), default_initial_steps(problem),
                                   cfg.pilot_sweeps, cfg.robbins_monro, rng)
                       .steps;
      }
    }
  }
  result.initial_step_sizes = steps;

  struct Replica {
    ParameterState state;
    std::unique_ptr<CoordinateEvaluator> evaluator;
    Philox rng;
    std::vector<std::uint64_t> sweep_counts;
    std::vector<std::uint64_t> block_counts;
    std::vector<std::uint64_t> kept_counts;
    std::size_t block_len = 0;
    std::size_t updates = 0;
  };
  std::vector<Replica> replicas(L);
  for (std::size_t l = 0; l < L; ++l) {
    auto& r = replicas[l];
    r.rng = make_stream(seed, StreamPurpose::replica, l);
    r.state = problem.sample_prior_state(r.rng);
    r.evaluator = problem.make_evaluator();
    r.evaluator->load(r.state.coordinates);
    r.sweep_counts.assign(counters, 0);
    r.block_counts.assign(counters, 0);
    r.kept_counts.assign(counters, 0);
  }
  auto exchange_rng = make_stream(seed, StreamPurpose::exchange_index, 0);

  const bool keep_all = cfg.retention == StateRetention::all_rungs;
  result.snapshots.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    auto& snap = result.snapshots[l];
    snap.beta = betas[l];
    snap.dimension = dim;
    snap.energies.resize(cfg.samples);
    if (keep_all || l + 1 == L) snap.coordinates.resize(cfg.samples * dim);
  }

  std::vector<std::uint64_t> exchange_attempts(L - 1, 0);
  std::vector<std::uint64_t> exchange_accepts(L - 1, 0);
  WorkerPool pool(WorkerPool::resolve_threads(cfg.threads, L - 1));
  const std::size_t total = cfg.burn_in + cfg.samples;

  for (std::size_t t = 0; t < total; ++t) {
    const bool burning = t < cfg.burn_in;
    {
      auto& r = replicas[0];
      problem.sample_prior(r.rng, std::span<double>(r.state.coordinates));
      r.state.energy = problem.energy(r.state.coordinates);
      r.evaluator->load(r.state.coordinates);
    }
    pool.parallel_for(L - 1, [&](std::size_t i) {
      const std::size_t l = i + 1;
      auto& r = replicas[l];
      if (binary) {
        r.sweep_counts[0] = flip_step(problem, betas[l], r.state, r.rng, *r.evaluator) ? 1 : 0;
      } else {
        std::fill(r.sweep_counts.begin(), r.sweep_counts.end(), 0);
        metropolis_sweep(problem, betas[l], r.state, steps[l], r.rng, *r.evaluator,
                         std::span<std::uint64_t>(r.sweep_counts));
      }
      for (std::size_t j = 0; j < counters; ++j) {
        if (burning) {
          r.block_counts[j] += r.sweep_counts[j];
        } else {
          r.kept_counts[j] += r.sweep_counts[j];
        }
      }
      if (burning && !binary && ++r.block_len == cfg.robbins_monro.update_every) {
        ++r.updates;
        for (std::size_t j = 0; j < dim; ++j) {
          steps[l][j] = robbins_monro_update(
              steps[l][j], static_cast<double>(r.block_counts[j]) / static_cast<double>(r.block_len), r.updates,
              cfg.robbins_monro);
          r.block_counts[j] = 0;
        }
        r.block_len = 0;
      }
    });

    if ((t + 1) % cfg.exchange_every == 0) {
      for (std::size_t l = 0; l + 1 < L; ++l) {
        auto& lo = replicas[l];
        auto& hi = replicas[l + 1];
        const double prob = exchange_accept_prob(n, betas[l + 1], betas[l], hi.state.energy, lo.state.energy);
        const bool accepted = exchange_decision(prob, exchange_rng);
        if (!burning) {
          ++exchange_attempts[l];
          if (accepted) ++exchange_accepts[l];
        }
        if (accepted) {
          std::swap(lo.state, hi.state);
          lo.evaluator->load(lo.state.coordinates);
          hi.evaluator->load(hi.state.coordinates);
        }
      }
    }

    if (!burning) {
      const std::size_t row = t - cfg.burn_in;
      for (std::size_t l = 0; l < L; ++l) {
        auto& snap = result.snapshots[l];
        snap.energies[row] = replicas[l].state.energy;
        if (snap.has_states()) {
          std::copy(replicas[l].state.coordinates.begin(), replicas[l].state.coordinates.end(),
                    snap.coordinates.begin() + static_cast<std::ptrdiff_t>(row * dim));
        }
      }
    }
  }

  result.ladder.step_sizes = steps;
  if (binary) {
    for (auto& s : result.ladder.step_sizes) s.clear();
  } else {
    result.ladder.step_sizes[0].clear();
  }
  result.metropolis_rates.emplace_back();
  for (std::size_t l = 1; l < L; ++l) {
    std::vector<double> rates(counters);
    for (std::size_t j = 0; j < counters; ++j) {
      rates[j] = static_cast<double>(replicas[l].kept_counts[j]) / static_cast<double>(cfg.samples);
    }
    result.metropolis_rates.push_back(std::move(rates));
  }
  for (std::size_t l = 0; l + 1 < L; ++l) {
    result.exchange_rates.push_back(exchange_attempts[l] > 0 ? static_cast<double>(exchange_accepts[l]) /
                                                                   static_cast<double>(exchange_attempts[l])
                                                             : 0.0);
    result.predicted_exchange_rates.push_back(
        estimate_exchange_rate(result.snapshots[l].energies, betas[l + 1] - betas[l], n));
  }
  std::vector<SteppingStoneTerm> terms;
  result.free_energy = estimate_free_energy(result.snapshots, n, &terms);
  for (const auto& t : terms) result.free_energy_terms.push_back(t.value());
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return result;
}

}  // namespace semc
