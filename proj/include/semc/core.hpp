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
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semc/random.hpp"

/// Tempered MCMC samplers: replica exchange, SMC samplers (plain and
/// waste-free) and sequential exchange Monte Carlo.
///
/// Conventions used throughout:
///  - a problem defines an error function E(θ) and a data size N so that the
///    likelihood is exp(-N E(θ)) / C;
///  - priors are flat over the problem's support (a box for continuous
///    problems, all bit strings for binary problems);
///  - the tempered density at inverse temperature β is ∝ exp(-β N E(θ));
///  - free energies are reported without the log C term.
namespace semc {

enum class ProblemKind { continuous_box, binary };

inline const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::continuous_box ? "continuous" : "binary";
}

struct Interval {
  double low = 0.0;
  double high = 1.0;

  double width() const { return high - low; }
  bool contains(double x) const { return x >= low && x <= high; }
};

/// One point of parameter space with its cached error-function value.
/// Binary problems store bits as 0.0 / 1.0 so both kinds share storage.
struct ParameterState {
  std::vector<double> coordinates;
  double energy = 0.0;
};

/// Per-chain scratch for evaluating single-coordinate changes.
///
/// `load` must be called whenever the chain's state changes by any route other
/// than `commit`. Energies returned by `propose` must be bit-identical to
/// TargetProblem::energy on the modified coordinates.
class CoordinateEvaluator {
 public:
  virtual ~CoordinateEvaluator() = default;

  virtual void load(std::span<const double> coordinates) = 0;
  /// Energy with coordinate `index` replaced by `value`; the loaded state is
  /// unchanged until commit().
  virtual double propose(std::size_t index, double value) = 0;
  /// Applies the most recent proposal to the loaded state.
  virtual void commit() = 0;
};

/// The Bayesian model: support, data size N and error function E.
///
/// Implementations must keep `energy` deterministic and re-entrant; samplers
/// call it concurrently from many chains.
class TargetProblem {
 public:
  /// Continuous problem on a box.
  TargetProblem(std::string label, std::vector<Interval> bounds, double data_size)
      : label_(std::move(label)),
        kind_(ProblemKind::continuous_box),
        dimension_(bounds.size()),
        bounds_(std::move(bounds)),
        data_size_(data_size) {
    if (dimension_ == 0) throw std::invalid_argument("problem dimension must be positive");
    for (const auto& b : bounds_) {
      if (!(std::isfinite(b.low) && std::isfinite(b.high) && b.high > b.low)) {
        throw std::invalid_argument("problem bounds must be finite with high > low");
      }
    }
    check_data_size();
  }

  /// Binary problem over {0,1}^bits.
  TargetProblem(std::string label, std::size_t bits, double data_size)
      : label_(std::move(label)),
        kind_(ProblemKind::binary),
        dimension_(bits),
        bounds_(bits, Interval{0.0, 1.0}),
        data_size_(data_size) {
    if (dimension_ == 0) throw std::invalid_argument("problem dimension must be positive");
    check_data_size();
  }

  virtual ~TargetProblem() = default;
  TargetProblem(const TargetProblem&) = default;
  TargetProblem& operator=(const TargetProblem&) = default;

  const std::string& label() const { return label_; }
  ProblemKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  std::span<const Interval> bounds() const { return bounds_; }
  double data_size() const { return data_size_; }

  virtual double energy(std::span<const double> coordinates) const = 0;

  /// Scratch object for coordinate-wise updates. The default re-evaluates the
  /// full energy for every proposal.
  virtual std::unique_ptr<CoordinateEvaluator> make_evaluator() const;

  /// Support test: in-bounds for boxes, exact 0/1 values for bit strings.
  bool in_support(std::span<const double> coordinates) const {
    if (coordinates.size() != dimension_) return false;
    for (std::size_t j = 0; j < dimension_; ++j) {
      const double x = coordinates[j];
      if (kind_ == ProblemKind::binary) {
        if (x != 0.0 && x != 1.0) return false;
      } else if (!bounds_[j].contains(x)) {
        return false;
      }
    }
    return true;
  }

  /// Draws coordinates from the flat prior into `out`.
  template <class Rng>
  void sample_prior(Rng& rng, std::span<double> out) const {
    if (out.size() != dimension_) throw std::invalid_argument("prior sample buffer has wrong size");
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (kind_ == ProblemKind::binary) {
        out[j] = static_cast<double>(rng() >> 63);
      } else {
        out[j] = uniform(rng, bounds_[j].low, bounds_[j].high);
      }
    }
  }

  template <class Rng>
  ParameterState sample_prior_state(Rng& rng) const {
    ParameterState state;
    state.coordinates.resize(dimension_);
    sample_prior(rng, std::span<double>(state.coordinates));
    state.energy = energy(state.coordinates);
    return state;
  }

  ParameterState make_state(std::vector<double> coordinates) const {
    if (!in_support(coordinates)) throw std::invalid_argument("state outside problem support");
    ParameterState state{std::move(coordinates), 0.0};
    state.energy = energy(state.coordinates);
    return state;
  }

 private:
  void check_data_size() const {
    if (!(std::isfinite(data_size_) && data_size_ >= 0.0)) {
      throw std::invalid_argument("data size N must be finite and non-negative");
    }
  }

  std::string label_;
  ProblemKind kind_;
  std::size_t dimension_;
  std::vector<Interval> bounds_;
  double data_size_;
};

namespace detail {

class DirectEvaluator final : public CoordinateEvaluator {
 public:
  explicit DirectEvaluator(const TargetProblem& problem) : problem_(&problem) {}

  void load(std::span<const double> coordinates) override {
    coordinates_.assign(coordinates.begin(), coordinates.end());
  }
  double propose(std::size_t index, double value) override {
    index_ = index;
    value_ = value;
    const double saved = coordinates_[index];
    coordinates_[index] = value;
    const double e = problem_->energy(coordinates_);
    coordinates_[index] = saved;
    return e;
  }
  void commit() override { coordinates_[index_] = value_; }

 private:
  const TargetProblem* problem_;
  std::vector<double> coordinates_;
  std::size_t index_ = 0;
  double value_ = 0.0;
};

}  // namespace detail

inline std::unique_ptr<CoordinateEvaluator> TargetProblem::make_evaluator() const {
  return std::make_unique<detail::DirectEvaluator>(*this);
}

/// A problem whose error function is an arbitrary callable. Used for toy
/// targets in tests and for user-supplied models.
class FunctionProblem final : public TargetProblem {
 public:
  using EnergyFn = std::function<double(std::span<const double>)>;

  FunctionProblem(std::string label, std::vector<Interval> bounds, double data_size, EnergyFn fn)
      : TargetProblem(std::move(label), std::move(bounds), data_size), fn_(std::move(fn)) {}
  FunctionProblem(std::string label, std::size_t bits, double data_size, EnergyFn fn)
      : TargetProblem(std::move(label), bits, data_size), fn_(std::move(fn)) {}

  double energy(std::span<const double> coordinates) const override { return fn_(coordinates); }

 private:
  EnergyFn fn_;
};

/// Inverse temperatures 0 = β_1 < ... < β_L = 1 and the per-coordinate step
/// sizes of every rung. Rung 0 (the prior) has no step sizes; binary problems
/// have none on any rung.
struct TemperatureLadder {
  std::vector<double> betas;
  std::vector<std::vector<double>> step_sizes;

  std::size_t size() const { return betas.size(); }

  /// Throws std::invalid_argument unless the ladder is well formed.
  /// `complete` additionally requires the last beta to be exactly 1.
  void validate(bool complete = true) const {
    if (betas.empty() || betas.front() != 0.0) throw std::invalid_argument("ladder must start at beta = 0");
    for (std::size_t l = 1; l < betas.size(); ++l) {
      if (!(betas[l] > betas[l - 1])) throw std::invalid_argument("ladder betas must be strictly increasing");
    }
    if (complete && betas.back() != 1.0) throw std::invalid_argument("completed ladder must end at beta = 1");
    if (step_sizes.size() != betas.size()) throw std::invalid_argument("step sizes must align with betas");
    for (const auto& rung : step_sizes) {
      for (double eps : rung) {
        if (!(std::isfinite(eps) && eps > 0.0)) throw std::invalid_argument("step sizes must be positive and finite");
      }
    }
  }
};

/// The samples retained at one rung, stored row-major (size() x dimension).
/// When a run keeps only final-rung states, earlier snapshots carry energies
/// only and `coordinates` is empty.
struct EnsembleSnapshot {
  double beta = 0.0;
  std::size_t dimension = 0;
  std::vector<double> coordinates;
  std::vector<double> energies;

  std::size_t size() const { return energies.size(); }
  bool has_states() const { return !coordinates.empty(); }

  std::span<const double> state(std::size_t i) const { return {coordinates.data() + i * dimension, dimension}; }
  std::span<double> state(std::size_t i) { return {coordinates.data() + i * dimension, dimension}; }

  /// Column `j` of the stored states.
  std::vector<double> coordinate(std::size_t j) const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = coordinates[i * dimension + j];
    return out;
  }
};

struct RunResult {
  std::string sampler;
  std::string problem;
  TemperatureLadder ladder;
  std::vector<EnsembleSnapshot> snapshots;
  /// F' = F - log C.
  double free_energy = 0.0;
  /// Per adjacent pair (l-1, l): -log <exp(-N (β_l - β_{l-1}) E)>_{β_{l-1}}.
  std::vector<double> free_energy_terms;
  /// Realized exchange acceptance per adjacent pair; empty for SMC samplers.
  std::vector<double> exchange_rates;
  /// Exchange rate predicted from the lower rung's samples, per adjacent pair.
  std::vector<double> predicted_exchange_rates;
  /// Per rung, per coordinate Metropolis acceptance (one entry per rung for
  /// binary problems; empty for the prior rung).
  std::vector<std::vector<double>> metropolis_rates;
  /// Step sizes each rung started from before Robbins-Monro adaptation.
  std::vector<std::vector<double>> initial_step_sizes;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
};

/// log of exp(-β N E_new) / exp(-β N E_old); flat priors cancel inside the
/// support.
inline double tempered_log_density_ratio(const TargetProblem& problem, double beta, double e_new, double e_old) {
  if (!(std::isfinite(beta) && std::isfinite(e_new) && std::isfinite(e_old))) {
    throw std::invalid_argument("tempered_log_density_ratio: non-finite input");
  }
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("tempered_log_density_ratio: beta outside [0, 1]");
  if (beta == 0.0) return 0.0;
  return -beta * problem.data_size() * (e_new - e_old);
}

/// True iff the state lies in the support and its cached energy equals a fresh
/// evaluation exactly.
inline bool validate_state(const TargetProblem& problem, const ParameterState& state) {
  if (!problem.in_support(state.coordinates)) return false;
  return problem.energy(state.coordinates) == state.energy;
}

}  // namespace semc
