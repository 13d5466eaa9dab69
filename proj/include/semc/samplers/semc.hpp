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

#include <cstdint>
#include <stdexcept>

#include "semc/samplers/sequential.hpp"

namespace semc {

struct SemcConfig {
  /// Retained samples per rung.
  std::size_t T = 10000;
  /// Parallel chains per rung.
  std::size_t S = 50;
  /// Exchange with the previous rung after every sweep. Off gives waste-free
  /// SMC with S ancestors and burn-in T/S.
  bool exchange_enabled = true;
  SequentialSettings settings{};

  void validate() const {
    if (S == 0) throw std::invalid_argument("SEMC: S must be at least 1");
    if (T < 2 || T % S != 0) throw std::invalid_argument("SEMC: T must be a multiple of S and at least 2");
    settings.exchange.validate();
    settings.robbins_monro.validate();
  }
};

/// Sequential exchange Monte Carlo. Every rung runs S chains of 2T/S sweeps,
/// each started from a weighted draw of the previous rung; after every sweep
/// a chain attempts an exchange with the previous rung's pool. Step sizes adapt
/// over the first half; the second half of every chain is retained.
inline RunResult run_semc(const TargetProblem& problem, const SemcConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const std::size_t per_chain = cfg.T / cfg.S;
  auto plan = [&](std::size_t) {
    detail::RungPlan p;
    p.chains = cfg.S;
    p.sweeps = 2 * per_chain;
    p.keep = per_chain;
    p.adapt_sweeps = per_chain;
    p.exchange = cfg.exchange_enabled;
    return p;
  };
  return run_sequential_sampler(problem, cfg.T, cfg.settings, plan, "semc", seed, cfg.exchange_enabled);
}

}  // namespace semc
