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
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "semc/core.hpp"

namespace semc {

/// Pieces of one stepping-stone factor, kept so the factor can be recomputed
/// from serialized output: term = -(log_mean_shifted - scale * energy_min).
struct SteppingStoneTerm {
  double energy_min = 0.0;
  /// log((1/T) Σ exp(-scale (E_i - E_min)))
  double log_mean_shifted = 0.0;
  /// N (β_{l+1} - β_l)
  double scale = 0.0;

  double value() const { return -(log_mean_shifted - scale * energy_min); }
};

/// -log <exp(-N Δβ E)> over `energies`, via the E_min shift.
inline SteppingStoneTerm stepping_stone_term(std::span<const double> energies, double delta_beta, double data_size) {
  if (energies.empty()) throw std::invalid_argument("free energy: empty snapshot");
  SteppingStoneTerm term;
  term.scale = delta_beta * data_size;
  term.energy_min = *std::min_element(energies.begin(), energies.end());
  double sum = 0.0;
  for (double e : energies) sum += std::exp(-term.scale * (e - term.energy_min));
  term.log_mean_shifted = std::log(sum / static_cast<double>(energies.size()));
  return term;
}

/// Stepping-stone estimate of F' = -log z(1) from snapshots ordered by beta
/// (first at β = 0, last at β = 1).
inline double estimate_free_energy(std::span<const EnsembleSnapshot> snapshots, double data_size,
                                   std::vector<SteppingStoneTerm>* terms = nullptr) {
  if (snapshots.size() < 2) throw std::invalid_argument("free energy needs at least two snapshots");
  if (snapshots.front().beta != 0.0 || snapshots.back().beta != 1.0) {
    throw std::invalid_argument("free energy needs snapshots spanning beta = 0 to beta = 1");
  }
  double free_energy = 0.0;
  if (terms) terms->clear();
  for (std::size_t l = 0; l + 1 < snapshots.size(); ++l) {
    const auto term =
        stepping_stone_term(snapshots[l].energies, snapshots[l + 1].beta - snapshots[l].beta, data_size);
    free_energy += term.value();
    if (terms) terms->push_back(term);
  }
  return free_energy;
}

/// log Σ exp(x_i) for a running accumulation.
class LogSumExp {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double value() const { return max_ + std::log(sum_); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

/// -log of the prior-averaged integral of exp(-N E) over a 2-D box, by the
/// tensor-grid trapezoid rule with `resolution` intervals per axis.
inline double reference_free_energy_quadrature(const TargetProblem& problem, std::size_t resolution) {
  if (problem.kind() != ProblemKind::continuous_box || problem.dimension() != 2) {
    throw std::invalid_argument("quadrature reference needs a 2-D continuous problem");
  }
  if (resolution < 2) throw std::invalid_argument("quadrature resolution must be >= 2");
  const auto b = problem.bounds();
  const double h0 = b[0].width() / static_cast<double>(resolution);
  const double h1 = b[1].width() / static_cast<double>(resolution);
  const double n = problem.data_size();
  LogSumExp acc;
  std::vector<double> theta(2);
  std::vector<double> row(resolution + 1);
  for (std::size_t i = 0; i <= resolution; ++i) {
    theta[0] = i == resolution ? b[0].high : b[0].low + h0 * static_cast<double>(i);
    double row_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= resolution; ++k) {
      theta[1] = k == resolution ? b[1].high : b[1].low + h1 * static_cast<double>(k);
      row[k] = -n * problem.energy(theta);
      row_max = std::max(row_max, row[k]);
    }
    double row_sum = 0.0;
    for (std::size_t k = 0; k <= resolution; ++k) {
      const double wk = (k == 0 || k == resolution) ? 0.5 : 1.0;
      row_sum += wk * std::exp(row[k] - row_max);
    }
    const double wi = (i == 0 || i == resolution) ? 0.5 : 1.0;
    acc.add(std::log(wi * row_sum) + row_max);
  }
  // Prior density is 1/area, so the average is the integral over area.
  const double log_average = acc.value() + std::log(h0 * h1) - std::log(b[0].width() * b[1].width());
  return -log_average;
}

struct QuadratureResult {
  double free_energy = 0.0;
  std::size_t resolution = 0;
  double last_change = 0.0;
};

/// Doubles the resolution until successive estimates differ by less than `tol`.
inline QuadratureResult reference_free_energy_quadrature_converged(const TargetProblem& problem,
                                                                   std::size_t start_resolution = 256,
                                                                   double tol = 1e-3,
                                                                   std::size_t max_resolution = 1u << 14) {
  std::size_t res = start_resolution;
  double previous = reference_free_energy_quadrature(problem, res);
  while (res < max_resolution) {
    res *= 2;
    const double current = reference_free_energy_quadrature(problem, res);
    const double change = std::abs(current - previous);
    previous = current;
    if (change < tol) return {current, res, change};
  }
  throw std::runtime_error("quadrature did not converge");
}

/// Exact F' for a binary problem by enumerating all 2^p indicator vectors
/// under the uniform prior. Refuses p > 20.
inline double reference_free_energy_enumeration(const TargetProblem& problem) {
  if (problem.kind() != ProblemKind::binary) throw std::invalid_argument("enumeration reference needs a binary problem");
  const std::size_t p = problem.dimension();
  if (p > 20) throw std::invalid_argument("enumeration refused: dimension exceeds 20");
  const double n = problem.data_size();
  LogSumExp acc;
  std::vector<double> bits(p);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    for (std::size_t j = 0; j < p; ++j) bits[j] = static_cast<double>((mask >> j) & 1u);
    acc.add(-n * problem.energy(bits));
  }
  return -(acc.value() - static_cast<double>(p) * std::log(2.0));
}

}  // namespace semc
