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
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "semc/core.hpp"
#include "semc/evidence.hpp"

namespace semc {

/// Normalized histogram over [lo, hi] with equal-width bins; the last bin is
/// closed on the right.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  double bin_width = 1.0;
  std::vector<double> masses;

  std::size_t bins() const { return masses.size(); }
  double bin_left(std::size_t i) const { return lo + bin_width * static_cast<double>(i); }

  bool same_binning(const Histogram& other) const {
    return lo == other.lo && hi == other.hi && bin_width == other.bin_width && bins() == other.bins();
  }
};

namespace detail {

inline std::size_t bin_count(double lo, double hi, double bin_width) {
  if (!(hi > lo) || !(bin_width > 0.0) || !std::isfinite(hi - lo)) throw std::invalid_argument("histogram: need hi > lo and bin_width > 0");
  const double exact = (hi - lo) / bin_width;
  const double rounded = std::round(exact);
  if (rounded < 1.0 || std::abs(exact - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument("histogram: range must be a whole number of bins");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace detail

inline Histogram build_histogram(std::span<const double> values, double lo, double hi, double bin_width) {
  Histogram h{lo, hi, bin_width, std::vector<double>(detail::bin_count(lo, hi, bin_width), 0.0)};
  if (values.empty()) throw std::invalid_argument("histogram: no values");
  std::vector<std::size_t> counts(h.bins(), 0);
  for (double v : values) {
    if (!(v >= lo && v <= hi)) throw std::invalid_argument("histogram: value outside [lo, hi]");
    auto i = static_cast<std::size_t>(std::floor((v - lo) / bin_width));
    counts[std::min(i, h.bins() - 1)] += 1;
  }
  const double total = static_cast<double>(values.size());
  for (std::size_t i = 0; i < h.bins(); ++i) h.masses[i] = static_cast<double>(counts[i]) / total;
  return h;
}

/// W1 = bin_width Σ_b |CDF1(b) - CDF2(b)|.
inline double wasserstein1(const Histogram& h1, const Histogram& h2) {
  if (!h1.same_binning(h2)) throw std::invalid_argument("wasserstein1: histograms have different binning");
  double c1 = 0.0;
  double c2 = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < h1.bins(); ++i) {
    c1 += h1.masses[i];
    c2 += h2.masses[i];
    total += std::abs(c1 - c2);
  }
  return h1.bin_width * total;
}

/// Spectral peak centres sorted ascending within every sample, one histogram
/// per sorted slot. `coordinates` holds rows of (a, μ, b) triples.
inline std::vector<Histogram> sorted_mu_histograms(const EnsembleSnapshot& snapshot, double lo = 0.0, double hi = 1.0,
                                                   double bin_width = 0.005) {
  if (!snapshot.has_states()) throw std::invalid_argument("sorted_mu_histograms: snapshot has no states");
  if (snapshot.dimension % 3 != 0) throw std::invalid_argument("sorted_mu_histograms: not a spectral snapshot");
  const std::size_t peaks = snapshot.dimension / 3;
  std::vector<std::vector<double>> slots(peaks, std::vector<double>(snapshot.size()));
  std::vector<double> mu(peaks);
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    const auto row = snapshot.state(i);
    for (std::size_t k = 0; k < peaks; ++k) mu[k] = row[3 * k + 1];
    std::sort(mu.begin(), mu.end());
    for (std::size_t k = 0; k < peaks; ++k) slots[k][i] = mu[k];
  }
  std::vector<Histogram> out;
  for (const auto& s : slots) out.push_back(build_histogram(s, lo, hi, bin_width));
  return out;
}

inline double mean_slot_wasserstein(std::span<const Histogram> a, std::span<const Histogram> b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("mean_slot_wasserstein: slot counts differ");
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) total += wasserstein1(a[k], b[k]);
  return total / static_cast<double>(a.size());
}

/// Least-squares slope of log ε against log β over rungs with β >= beta_min,
/// averaged over coordinates.
inline double step_size_scaling_slope(const TemperatureLadder& ladder, double beta_min) {
  std::vector<std::size_t> rungs;
  for (std::size_t l = 0; l < ladder.size(); ++l) {
    if (ladder.betas[l] > 0.0 && ladder.betas[l] >= beta_min && l < ladder.step_sizes.size() &&
        !ladder.step_sizes[l].empty()) {
      rungs.push_back(l);
    }
  }
  if (rungs.size() < 3) throw std::invalid_argument("step_size_scaling_slope: need at least 3 rungs above beta_min");
  const std::size_t dim = ladder.step_sizes[rungs.front()].size();
  double mean_x = 0.0;
  for (auto l : rungs) mean_x += std::log(ladder.betas[l]);
  mean_x /= static_cast<double>(rungs.size());
  double sxx = 0.0;
  for (auto l : rungs) sxx += (std::log(ladder.betas[l]) - mean_x) * (std::log(ladder.betas[l]) - mean_x);
  double slope_sum = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double mean_y = 0.0;
    for (auto l : rungs) mean_y += std::log(ladder.step_sizes[l][j]);
    mean_y /= static_cast<double>(rungs.size());
    double sxy = 0.0;
    for (auto l : rungs) sxy += (std::log(ladder.betas[l]) - mean_x) * (std::log(ladder.step_sizes[l][j]) - mean_y);
    slope_sum += sxy / sxx;
  }
  return slope_sum / static_cast<double>(dim);
}

/// Posterior marginal histogram of one coordinate of a 2-D continuous problem
/// by midpoint quadrature: `sub` points per bin along the coordinate and
/// `cross` points along the other axis.
inline Histogram reference_marginal_histogram(const TargetProblem& problem, std::size_t coordinate, double bin_width,
                                              std::size_t sub = 8, std::size_t cross = 2048) {
  if (problem.kind() != ProblemKind::continuous_box || problem.dimension() != 2 || coordinate > 1) {
    throw std::invalid_argument("reference_marginal_histogram needs a 2-D continuous problem");
  }
  const auto bounds = problem.bounds();
  const Interval along = bounds[coordinate];
  const Interval other = bounds[1 - coordinate];
  Histogram h{along.low, along.high, bin_width,
              std::vector<double>(detail::bin_count(along.low, along.high, bin_width), 0.0)};
  const double n = problem.data_size();
  const double h_along = bin_width / static_cast<double>(sub);
  const double h_other = other.width() / static_cast<double>(cross);
  std::vector<double> log_mass(h.bins());
  double theta[2];
  for (std::size_t b = 0; b < h.bins(); ++b) {
    LogSumExp acc;
    for (std::size_t i = 0; i < sub; ++i) {
      theta[coordinate] = h.bin_left(b) + (static_cast<double>(i) + 0.5) * h_along;
      for (std::size_t k = 0; k < cross; ++k) {
        theta[1 - coordinate] = other.low + (static_cast<double>(k) + 0.5) * h_other;
        acc.add(-n * problem.energy(theta));
      }
    }
    log_mass[b] = acc.value();
  }
  const double top = *std::max_element(log_mass.begin(), log_mass.end());
  double total = 0.0;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    h.masses[b] = std::exp(log_mass[b] - top);
    total += h.masses[b];
  }
  for (double& m : h.masses) m /= total;
  return h;
}

}  // namespace semc
