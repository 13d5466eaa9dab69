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
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semc/core.hpp"
#include "semc/kernels.hpp"

namespace semc {

struct RobbinsMonroConfig {
  double c = 4.0;
  double n0 = 15.0;
  double p_star = 0.5;
  /// Pooled Metropolis updates between step-size updates.
  std::size_t update_every = 50;

  void validate() const {
    if (!(c > 0.0 && n0 > 0.0)) throw std::invalid_argument("Robbins-Monro c and N0 must be positive");
    if (!(p_star > 0.0 && p_star < 1.0)) throw std::invalid_argument("Robbins-Monro p* must lie in (0, 1)");
    if (update_every == 0) throw std::invalid_argument("Robbins-Monro update interval must be positive");
  }
};

struct ExchangeTargetConfig {
  double j_target = 0.5;
  double bisection_tol = 1e-4;
  std::size_t max_bisection_iters = 200;

  void validate() const {
    if (!(j_target > 0.0 && j_target < 1.0)) throw std::invalid_argument("target exchange rate must lie in (0, 1)");
    if (!(bisection_tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
    if (max_bisection_iters == 0) throw std::invalid_argument("bisection iteration cap must be positive");
  }
};

/// ε ← ε + ε c (p_accept - p*) / (N0 + iter_count), floored at 1e-6 ε.
inline double robbins_monro_update(double eps, double p_accept, std::size_t iter_count,
                                   const RobbinsMonroConfig& cfg) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("robbins_monro_update: eps must be positive");
  const double updated = eps + eps * cfg.c * (p_accept - cfg.p_star) / (cfg.n0 + static_cast<double>(iter_count));
  return std::max(updated, eps * 1e-6);
}

/// Sample estimate of the exchange rate between the rung that produced
/// `energies` (β_{l-1}) and a colder rung β_{l-1} + Δβ.
///
/// With w_i = exp(-Δβ N (E_i - E_min)):
///   Ĵ = min(1, [2/(T(T-1)) Σ_{i≠j} w_j (1{E_j > E_i} + ½ 1{E_j = E_i})] / mean(w)),
/// i.e. the importance weight sits on the higher-energy member of each pair.
/// Energies are sorted once; each evaluation is then O(T).
class ExchangeRateEstimator {
 public:
  ExchangeRateEstimator(std::span<const double> energies, double data_size) : data_size_(data_size) {
    if (energies.size() < 2) throw std::invalid_argument("exchange rate estimate needs at least 2 samples");
    sorted_.assign(energies.begin(), energies.end());
    std::sort(sorted_.begin(), sorted_.end());
    // rank_[i]: number of other samples strictly below, plus half the ties.
    rank_.resize(sorted_.size());
    std::size_t start = 0;
    while (start < sorted_.size()) {
      std::size_t end = start + 1;
      while (end < sorted_.size() && sorted_[end] == sorted_[start]) ++end;
      const double r = static_cast<double>(start) + 0.5 * static_cast<double>(end - start - 1);
      for (std::size_t i = start; i < end; ++i) rank_[i] = r;
      start = end;
    }
  }

  double operator()(double delta_beta) const {
    if (!(delta_beta >= 0.0)) throw std::invalid_argument("exchange rate estimate: delta_beta must be >= 0");
    const double scale = delta_beta * data_size_;
    const double e_min = sorted_.front();
    double weighted_rank = 0.0;
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
      const double w = scale == 0.0 ? 1.0 : std::exp(-scale * (sorted_[i] - e_min));
      weighted_rank += w * rank_[i];
      weight_sum += w;
    }
    const double t = static_cast<double>(sorted_.size());
    return std::min(1.0, 2.0 * weighted_rank / ((t - 1.0) * weight_sum));
  }

  bool constant() const { return sorted_.front() == sorted_.back(); }

 private:
  double data_size_;
  std::vector<double> sorted_;
  std::vector<double> rank_;
};

inline double estimate_exchange_rate(std::span<const double> energies, double delta_beta, double data_size) {
  return ExchangeRateEstimator(energies, data_size)(delta_beta);
}

/// Next inverse temperature such that the estimated exchange rate from the
/// current rung equals the target. Returns 1 when even the jump to β = 1
/// keeps the estimate at or above target.
///
/// The bracket starts at max(1e-6, 2 * previous_gap) and doubles; bisection
/// stops when the estimated rates at the bracket ends differ by less than
/// bisection_tol.
inline double propose_next_beta(std::span<const double> energies, double beta_prev, double data_size,
                                 const ExchangeTargetConfig& cfg, double previous_gap = 0.0) {
  if (!(beta_prev >= 0.0 && beta_prev < 1.0)) throw std::invalid_argument("propose_next_beta: beta_prev must lie in [0, 1)");
  cfg.validate();
  const ExchangeRateEstimator rate(energies, data_size);
  const double cap = 1.0 - beta_prev;
  if (rate.constant()) return 1.0;

  double lo = 0.0;
  double rate_lo = 1.0;
  double hi = std::min(std::max(1e-6, 2.0 * previous_gap), cap);
  double rate_hi = rate(hi);
  while (rate_hi >= cfg.j_target) {
    if (hi >= cap) return 1.0;
    lo = hi;
    rate_lo = rate_hi;
    hi = std::min(2.0 * hi, cap);
    rate_hi = rate(hi);
  }
  for (std::size_t iter = 0; iter < cfg.max_bisection_iters; ++iter) {
    if (rate_lo - rate_hi < cfg.bisection_tol) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double rate_mid = rate(mid);
    if (rate_mid >= cfg.j_target) {
      lo = mid;
      rate_lo = rate_mid;
    } else {
      hi = mid;
      rate_hi = rate_mid;
    }
  }
  const double next = beta_prev + 0.5 * (lo + hi);
  return next >= 1.0 ? 1.0 : next;
}

/// Initial step size for the next rung assuming ε ∝ β^{-d}:
/// d = log(ε_{l-1}/ε_{l-2}) / log(β_{l-2}/β_{l-1}), clamped to [-3, 3], and
/// ε_l = ε_{l-1} (β_{l-1}/β_l)^d.
inline double extrapolate_step_size(double eps_prev, double eps_prev2, double beta_prev, double beta_prev2,
                                    double beta_next) {
  if (!(eps_prev > 0.0 && eps_prev2 > 0.0)) throw std::invalid_argument("extrapolate_step_size: step sizes must be positive");
  if (!(beta_prev2 > 0.0 && beta_prev > 0.0 && beta_next > 0.0)) {
    throw std::invalid_argument("extrapolate_step_size: betas must be positive");
  }
  if (beta_prev2 == beta_prev) throw std::invalid_argument("extrapolate_step_size: degenerate ladder");
  double d = std::log(eps_prev / eps_prev2) / std::log(beta_prev2 / beta_prev);
  d = std::clamp(d, -3.0, 3.0);
  return eps_prev * std::pow(beta_prev / beta_next, d);
}

struct PilotTuning {
  std::vector<double> steps;
  /// Per-coordinate acceptance over the last quarter of the pilot.
  std::vector<double> final_acceptance;
};

/// Runs `sweeps` Metropolis sweeps at `beta` from `start`, applying
/// Robbins-Monro every cfg.update_every sweeps. Returns the adapted step sizes.
template <class Rng>
PilotTuning tune_step_sizes(const TargetProblem& problem, double beta, ParameterState start,
                            std::vector<double> steps, std::size_t sweeps, const RobbinsMonroConfig& cfg, Rng& rng) {
  if (problem.kind() != ProblemKind::continuous_box) throw std::invalid_argument("step-size tuning needs a continuous problem");
  if (steps.size() != problem.dimension()) throw std::invalid_argument("tune_step_sizes: dimension mismatch");
  cfg.validate();
  const std::size_t dim = problem.dimension();
  auto evaluator = problem.make_evaluator();
  evaluator->load(start.coordinates);
  std::vector<std::uint64_t> block(dim, 0);
  std::vector<std::uint64_t> tail(dim, 0);
  const std::size_t tail_from = sweeps - sweeps / 4;
  std::size_t in_block = 0;
  std::size_t updates = 0;
  std::vector<std::uint64_t> counts(dim, 0);
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    std::fill(counts.begin(), counts.end(), 0);
    metropolis_sweep(problem, beta, start, steps, rng, *evaluator, std::span<std::uint64_t>(counts));
    for (std::size_t j = 0; j < dim; ++j) {
      block[j] += counts[j];
      if (sweep >= tail_from) tail[j] += counts[j];
    }
    if (++in_block == cfg.update_every) {
      ++updates;
      for (std::size_t j = 0; j < dim; ++j) {
        steps[j] = robbins_monro_update(steps[j], static_cast<double>(block[j]) / static_cast<double>(in_block),
                                        updates, cfg);
        block[j] = 0;
      }
      in_block = 0;
    }
  }
  PilotTuning out{std::move(steps), std::vector<double>(dim, 0.0)};
  const double tail_len = static_cast<double>(sweeps - tail_from);
  for (std::size_t j = 0; j < dim; ++j) out.final_acceptance[j] = tail_len > 0 ? static_cast<double>(tail[j]) / tail_len : 0.0;
  return out;
}

/// Half the box width per coordinate: the starting point of every pilot.
inline std::vector<double> default_initial_steps(const TargetProblem& problem) {
  std::vector<double> steps;
  steps.reserve(problem.dimension());
  for (const auto& b : problem.bounds()) steps.push_back(0.5 * b.width());
  return steps;
}

struct InitialRungSteps {
  std::vector<double> prior_rung;
  std::vector<double> first_rung;
};

/// Pilot step sizes for the prior rung (β = 0) and the first tempered rung
/// (β = beta_first), each from a fresh prior draw and ε = width/2.
template <class Rng>
InitialRungSteps tune_initial_rungs(const TargetProblem& problem, double beta_first, std::size_t pilot_sweeps,
                                    const RobbinsMonroConfig& cfg, Rng& rng) {
  InitialRungSteps out;
  out.prior_rung =
      tune_step_sizes(problem, 0.0, problem.sample_prior_state(rng), default_initial_steps(problem), pilot_sweeps, cfg, rng)
          .steps;
  out.first_rung = tune_step_sizes(problem, beta_first, problem.sample_prior_state(rng), default_initial_steps(problem),
                                   pilot_sweeps, cfg, rng)
                       .steps;
  return out;
}

}  // namespace semc
