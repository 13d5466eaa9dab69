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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semc/adaptation.hpp"
#include "semc/core.hpp"
#include "semc/evidence.hpp"
#include "semc/kernels.hpp"
#include "semc/random.hpp"
#include "semc/worker_pool.hpp"

namespace semc {

enum class StateRetention {
  /// Every snapshot keeps its states.
  all_rungs,
  /// Only the final (β = 1) snapshot keeps states; the others keep energies.
  final_rung,
};

/// Settings shared by the samplers that build their ladder one rung at a time
/// (SEMC, SMCS, waste-free SMC).
struct SequentialSettings {
  ExchangeTargetConfig exchange{};
  RobbinsMonroConfig robbins_monro{};
  /// Pilot sweeps used to set the step size of the first tempered rung.
  std::size_t pilot_sweeps = 1000;
  StateRetention retention = StateRetention::all_rungs;
  /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
  std::size_t threads = 1;
  std::size_t max_rungs = 10000;
};

namespace detail {

/// How one rung is populated from the previous rung's snapshot.
struct RungPlan {
  std::size_t chains = 1;
  /// Kernel applications per chain.
  std::size_t sweeps = 1;
  /// The last `keep` states of every chain form the snapshot.
  std::size_t keep = 1;
  /// Sweeps [0, adapt_sweeps) drive Robbins-Monro; later sweeps use frozen ε.
  std::size_t adapt_sweeps = 0;
  /// Exchange with the previous rung after every sweep (SEMC).
  bool exchange = false;
};

struct RungOutcome {
  EnsembleSnapshot snapshot;
  std::vector<double> steps;
  std::vector<double> metropolis_rates;
  double exchange_rate = 0.0;
};

/// Cumulative resampling weights exp(-Δβ N (E_i - E_min)).
inline std::vector<double> cumulative_weights(std::span<const double> energies, double scale) {
  const double e_min = *std::min_element(energies.begin(), energies.end());
  std::vector<double> cumulative(energies.size());
  double total = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    total += scale == 0.0 ? 1.0 : std::exp(-scale * (energies[i] - e_min));
    cumulative[i] = total;
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw std::runtime_error("degenerate resampling weights");
  return cumulative;
}

/// One multinomial draw from cumulative weights.
template <class Rng>
std::size_t draw_index(std::span<const double> cumulative, Rng& rng) {
  const double u = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

/// Chains sharing one evaluator reload it before every kernel application;
/// above this many chains per rung evaluators are per worker block instead of
/// per chain.
inline constexpr std::size_t kMaxPerChainEvaluators = 1024;

struct ChainState {
  ParameterState state;
  Philox rng;
  std::vector<std::uint64_t> sweep_counts;
  std::vector<std::uint64_t> adapt_counts;
  std::vector<std::uint64_t> frozen_counts;
  std::vector<std::uint64_t> total_counts;
};

/// Populates one rung at inverse temperature `beta` from `previous`.
///
/// Chains advance in lock-step rounds. Within a round every chain applies one
/// kernel (in parallel); exchanges with the live copy of the previous rung
/// then run serially in chain order, so results never depend on thread count.
inline RungOutcome run_rung(const TargetProblem& problem, const EnsembleSnapshot& previous, double beta,
                            std::vector<double> steps, const RungPlan& plan, const RobbinsMonroConfig& rm,
                            std::uint64_t seed, std::size_t rung, WorkerPool& pool) {
  if (!previous.has_states()) throw std::logic_error("previous rung has no states to resample");
  const std::size_t dim = problem.dimension();
  const bool binary = problem.kind() == ProblemKind::binary;
  const std::size_t counters = binary ? 1 : dim;
  const double n = problem.data_size();
  const double delta_beta = beta - previous.beta;
  const auto cumulative = cumulative_weights(previous.energies, delta_beta * n);

  std::vector<ChainState> chains(plan.chains);
  for (std::size_t s = 0; s < plan.chains; ++s) {
    auto& c = chains[s];
    c.rng = make_stream(seed, StreamPurpose::chain, rung, s);
    c.sweep_counts.assign(counters, 0);
    c.adapt_counts.assign(counters, 0);
    c.frozen_counts.assign(counters, 0);
    c.total_counts.assign(counters, 0);
  }

  const bool per_chain_evaluators = plan.chains <= kMaxPerChainEvaluators;
  const std::size_t blocks = std::min(pool.size(), plan.chains);
  std::vector<std::unique_ptr<CoordinateEvaluator>> evaluators(per_chain_evaluators ? plan.chains : blocks);
  for (auto& e : evaluators) e = problem.make_evaluator();

  // Exchange partners: two shuffled copies of the previous rung's indices,
  // split into contiguous blocks, one per chain.
  EnsembleSnapshot live;
  std::vector<std::uint32_t> partners;
  std::uint64_t exchange_attempts = 0;
  std::uint64_t exchange_accepts = 0;
  if (plan.exchange) {
    live = previous;
    const std::size_t t = previous.size();
    if (plan.chains * plan.sweeps != 2 * t) throw std::logic_error("exchange plan must use every partner index twice");
    partners.resize(2 * t);
    for (std::size_t i = 0; i < t; ++i) partners[i] = partners[t + i] = static_cast<std::uint32_t>(i);
    auto index_rng = make_stream(seed, StreamPurpose::exchange_index, rung);
    shuffle(std::span<std::uint32_t>(partners.data(), t), index_rng);
    shuffle(std::span<std::uint32_t>(partners.data() + t, t), index_rng);
  }

  RungOutcome out;
  out.snapshot.beta = beta;
  out.snapshot.dimension = dim;
  out.snapshot.coordinates.resize(plan.chains * plan.keep * dim);
  out.snapshot.energies.resize(plan.chains * plan.keep);

  const std::size_t block_rounds = std::max<std::size_t>(1, rm.update_every / plan.chains);
  std::size_t rounds_in_block = 0;
  std::size_t updates = 0;
  const std::size_t first_kept = plan.sweeps - plan.keep;

  for (std::size_t k = 0; k < plan.sweeps; ++k) {
    const bool adapting = !binary && k < plan.adapt_sweeps;
    pool.parallel_for(blocks, [&](std::size_t b) {
      const std::size_t begin = plan.chains * b / blocks;
      const std::size_t end = plan.chains * (b + 1) / blocks;
      for (std::size_t s = begin; s < end; ++s) {
        auto& c = chains[s];
        auto& evaluator = per_chain_evaluators ? *evaluators[s] : *evaluators[b];
        if (k == 0) {
          const std::size_t a = draw_index(std::span<const double>(cumulative), c.rng);
          const auto src = previous.state(a);
          c.state.coordinates.assign(src.begin(), src.end());
          c.state.energy = previous.energies[a];
          if (per_chain_evaluators) evaluator.load(c.state.coordinates);
        }
        if (!per_chain_evaluators) evaluator.load(c.state.coordinates);
        if (binary) {
          c.sweep_counts[0] = flip_step(problem, beta, c.state, c.rng, evaluator) ? 1 : 0;
        } else {
          std::fill(c.sweep_counts.begin(), c.sweep_counts.end(), 0);
          metropolis_sweep(problem, beta, c.state, steps, c.rng, evaluator, std::span<std::uint64_t>(c.sweep_counts));
        }
        for (std::size_t j = 0; j < counters; ++j) {
          c.total_counts[j] += c.sweep_counts[j];
          if (adapting) {
            c.adapt_counts[j] += c.sweep_counts[j];
          } else {
            c.frozen_counts[j] += c.sweep_counts[j];
          }
        }
      }
    });

    if (plan.exchange) {
      for (std::size_t s = 0; s < plan.chains; ++s) {
        auto& c = chains[s];
        const std::size_t j = partners[s * plan.sweeps + k];
        const double prob = exchange_accept_prob(n, beta, previous.beta, c.state.energy, live.energies[j]);
        ++exchange_attempts;
        if (exchange_decision(prob, c.rng)) {
          ++exchange_accepts;
          auto other = live.state(j);
          std::swap_ranges(other.begin(), other.end(), c.state.coordinates.begin());
          std::swap(live.energies[j], c.state.energy);
          if (per_chain_evaluators) evaluators[s]->load(c.state.coordinates);
        }
      }
    }

    if (k >= first_kept) {
      for (std::size_t s = 0; s < plan.chains; ++s) {
        const std::size_t row = (k - first_kept) * plan.chains + s;
        std::copy(chains[s].state.coordinates.begin(), chains[s].state.coordinates.end(),
                  out.snapshot.coordinates.begin() + static_cast<std::ptrdiff_t>(row * dim));
        out.snapshot.energies[row] = chains[s].state.energy;
      }
    }

    if (adapting) {
      ++rounds_in_block;
      if (rounds_in_block == block_rounds || k + 1 == plan.adapt_sweeps) {
        ++updates;
        const double samples = static_cast<double>(rounds_in_block * plan.chains);
        for (std::size_t j = 0; j < dim; ++j) {
          std::uint64_t accepted = 0;
          for (auto& c : chains) {
            accepted += c.adapt_counts[j];
            c.adapt_counts[j] = 0;
          }
          steps[j] = robbins_monro_update(steps[j], static_cast<double>(accepted) / samples, updates, rm);
        }
        rounds_in_block = 0;
      }
    }
  }

  const bool have_frozen = plan.adapt_sweeps < plan.sweeps || binary;
  const double frozen_sweeps = static_cast<double>(plan.sweeps - (binary ? 0 : std::min(plan.adapt_sweeps, plan.sweeps)));
  out.metropolis_rates.assign(counters, 0.0);
  for (std::size_t j = 0; j < counters; ++j) {
    std::uint64_t accepted = 0;
    for (const auto& c : chains) accepted += have_frozen ? c.frozen_counts[j] : c.total_counts[j];
    const double denom = static_cast<double>(plan.chains) * (have_frozen ? frozen_sweeps : static_cast<double>(plan.sweeps));
    out.metropolis_rates[j] = static_cast<double>(accepted) / denom;
  }
  out.steps = std::move(steps);
  out.exchange_rate =
      exchange_attempts > 0 ? static_cast<double>(exchange_accepts) / static_cast<double>(exchange_attempts) : 0.0;
  return out;
}

}  // namespace detail

/// Builds the ladder rung by rung: next β from the previous snapshot's
/// energies, step sizes by pilot (first tempered rung), copy (second) or
/// extrapolation (later), then populates the rung according to
/// `plan_for_rung(rung_index)`.
template <class PlanFn>
RunResult run_sequential_sampler(const TargetProblem& problem, std::size_t sample_size,
                                 const SequentialSettings& settings, PlanFn&& plan_for_rung, std::string sampler,
                                 std::uint64_t seed, bool report_exchange_rates) {
  settings.exchange.validate();
  settings.robbins_monro.validate();
  if (sample_size < 2) throw std::invalid_argument("sample size must be at least 2");
  const auto start_time = std::chrono::steady_clock::now();
  const bool binary = problem.kind() == ProblemKind::binary;
  const double n = problem.data_size();
  const std::size_t dim = problem.dimension();

  RunResult result;
  result.sampler = std::move(sampler);
  result.problem = problem.label();
  result.seed = seed;

  WorkerPool pool(WorkerPool::resolve_threads(settings.threads, plan_for_rung(1).chains));

  EnsembleSnapshot prior;
  prior.beta = 0.0;
  prior.dimension = dim;
  prior.coordinates.resize(sample_size * dim);
  prior.energies.resize(sample_size);
  {
    auto rng = make_stream(seed, StreamPurpose::prior, 0);
    for (std::size_t i = 0; i < sample_size; ++i) problem.sample_prior(rng, prior.state(i));
    pool.parallel_for(sample_size, [&](std::size_t i) { prior.energies[i] = problem.energy(prior.state(i)); });
  }
  result.snapshots.push_back(std::move(prior));
  result.ladder.betas.push_back(0.0);
  result.ladder.step_sizes.emplace_back();
  result.initial_step_sizes.emplace_back();
  result.metropolis_rates.emplace_back();

  double previous_gap = 0.0;
  while (result.ladder.betas.back() < 1.0) {
    const std::size_t rung = result.snapshots.size();
    if (rung > settings.max_rungs) throw std::runtime_error("ladder exceeded the maximum number of rungs");
    const auto& previous = result.snapshots.back();
    const double beta_prev = previous.beta;
    const double beta = propose_next_beta(previous.energies, beta_prev, n, settings.exchange, previous_gap);
    result.predicted_exchange_rates.push_back(estimate_exchange_rate(previous.energies, beta - beta_prev, n));

    std::vector<double> steps;
    if (!binary) {
      if (rung == 1) {
        auto rng = make_stream(seed, StreamPurpose::pilot, rung);
        const auto cumulative = detail::cumulative_weights(previous.energies, (beta - beta_prev) * n);
        const std::size_t a = detail::draw_index(std::span<const double>(cumulative), rng);
        ParameterState start{{previous.state(a).begin(), previous.state(a).end()}, previous.energies[a]};
        steps = tune_step_sizes(problem, beta, std::move(start), default_initial_steps(problem), settings.pilot_sweeps,
                                settings.robbins_monro, rng)
                    .steps;
      } else if (rung == 2) {
        steps = result.ladder.step_sizes[1];
      } else {
        const auto& e1 = result.ladder.step_sizes[rung - 1];
        const auto& e2 = result.ladder.step_sizes[rung - 2];
        steps.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          steps[j] = extrapolate_step_size(e1[j], e2[j], result.ladder.betas[rung - 1], result.ladder.betas[rung - 2], beta);
        }
      }
    }
    result.initial_step_sizes.push_back(steps);

    auto outcome = detail::run_rung(problem, previous, beta, std::move(steps), plan_for_rung(rung), settings.robbins_monro,
                                    seed, rung, pool);
    if (report_exchange_rates) result.exchange_rates.push_back(outcome.exchange_rate);
    result.metropolis_rates.push_back(std::move(outcome.metropolis_rates));
    result.ladder.betas.push_back(beta);
    result.ladder.step_sizes.push_back(std::move(outcome.steps));
    if (settings.retention == StateRetention::final_rung) {
      auto& done = result.snapshots.back();
      done.coordinates.clear();
      done.coordinates.shrink_to_fit();
    }
    result.snapshots.push_back(std::move(outcome.snapshot));
    previous_gap = beta - beta_prev;
  }

  std::vector<SteppingStoneTerm> terms;
  result.free_energy = estimate_free_energy(result.snapshots, n, &terms);
  for (const auto& t : terms) result.free_energy_terms.push_back(t.value());
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return result;
}

}  // namespace semc
