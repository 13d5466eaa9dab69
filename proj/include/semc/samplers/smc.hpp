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

struct SmcsConfig {
  /// Particles per rung.
  std::size_t T = 10000;
  /// Kernel steps per rung (per particle for SMCS, per ancestor chain for
  /// waste-free SMC).
  std::size_t n = 1;
  bool waste_free = false;
  /// Resampled ancestors for waste-free SMC; 0 derives T / n.
  std::size_t S = 0;
  /// Waste-free only: sweeps per chain run before the n retained states.
  std::size_t burn_in = 0;
  SequentialSettings settings{};

  std::size_t ancestors() const { return S == 0 ? T / n : S; }

  void validate() const {
    if (T < 2) throw std::invalid_argument("SMC: T must be at least 2");
    if (n == 0) throw std::invalid_argument("SMC: n must be at least 1");
    if (waste_free) {
      if (ancestors() == 0 || ancestors() * n != T) throw std::invalid_argument("waste-free SMC: T must equal S * n");
    } else if (S != 0 || burn_in != 0) {
      throw std::invalid_argument("SMCS: S and burn_in apply to waste-free SMC only");
    }
    settings.exchange.validate();
    settings.robbins_monro.validate();
  }
};

/// Sequential Monte Carlo sampler: T particles resampled from the previous
/// rung, each moved by n kernel sweeps; step sizes adapt over all sweeps.
inline RunResult run_smcs(const TargetProblem& problem, SmcsConfig cfg, std::uint64_t seed) {
  cfg.waste_free = false;
  cfg.validate();
  auto plan = [&](std::size_t) {
    detail::RungPlan p;
    p.chains = cfg.T;
    p.sweeps = cfg.n;
    p.keep = 1;
    p.adapt_sweeps = cfg.n;
    return p;
  };
  return run_sequential_sampler(problem, cfg.T, cfg.settings, plan, "smcs", seed, false);
}

/// Waste-free SMC: S ancestors resampled from the previous rung, each grown
/// into a chain whose last n states (after `burn_in` sweeps) all become
/// particles. Step sizes adapt during the burn-in, or over the whole chain when
/// there is none.
inline RunResult run_waste_free_smc(const TargetProblem& problem, SmcsConfig cfg, std::uint64_t seed) {
  cfg.waste_free = true;
  cfg.validate();
  auto plan = [&](std::size_t) {
    detail::RungPlan p;
    p.chains = cfg.ancestors();
    p.sweeps = cfg.burn_in + cfg.n;
    p.keep = cfg.n;
    p.adapt_sweeps = cfg.burn_in > 0 ? cfg.burn_in : p.sweeps;
    return p;
  };
  return run_sequential_sampler(problem, cfg.T, cfg.settings, plan, "wfsmc", seed, false);
}

}  // namespace semc
