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
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semc/core.hpp"
#include "semc/random.hpp"

namespace semc {

/// Peak parameters of f_K(x) = Σ_k a_k exp(-(b_k/2)(x - μ_k)²). As sampler
/// coordinates they are laid out per peak: (a_0, μ_0, b_0, a_1, μ_1, b_1, ...).
struct SpectralParams {
  std::vector<double> a;
  std::vector<double> mu;
  std::vector<double> b;

  std::size_t peaks() const { return a.size(); }

  std::vector<double> coordinates() const {
    std::vector<double> out;
    out.reserve(3 * peaks());
    for (std::size_t k = 0; k < peaks(); ++k) {
      out.push_back(a[k]);
      out.push_back(mu[k]);
      out.push_back(b[k]);
    }
    return out;
  }

  static SpectralParams from_coordinates(std::span<const double> c) {
    if (c.size() % 3 != 0) throw std::invalid_argument("spectral coordinates must come in (a, mu, b) triples");
    SpectralParams p;
    for (std::size_t k = 0; k < c.size() / 3; ++k) {
      p.a.push_back(c[3 * k]);
      p.mu.push_back(c[3 * k + 1]);
      p.b.push_back(c[3 * k + 2]);
    }
    return p;
  }
};

struct SpectralSpec {
  std::size_t grid_points = 301;
  double sigma = 0.05;
  SpectralParams truth{{0.8, 0.6, 0.9}, {0.25, 0.5, 0.75}, {100.0, 150.0, 120.0}};
  Interval a_prior{0.0, 2.0};
  Interval mu_prior{0.0, 1.0};
  Interval b_prior{10.0, 500.0};
  std::uint64_t seed = 1;

  std::size_t peaks() const { return truth.peaks(); }

  /// Three overlapping peaks (the default).
  static SpectralSpec three_peaks() { return {}; }

  /// Ten peaks spread over [0,1].
  static SpectralSpec ten_peaks() {
    SpectralSpec s;
    s.truth.a = {0.6, 0.9, 0.5, 0.8, 1.0, 0.7, 0.9, 0.6, 0.8, 0.5};
    s.truth.mu = {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95};
    s.truth.b = {400.0, 300.0, 450.0, 350.0, 300.0, 400.0, 350.0, 450.0, 300.0, 400.0};
    return s;
  }

  void validate() const {
    if (grid_points < 2) throw std::invalid_argument("spectral: need at least two grid points");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("spectral: sigma must be finite and >= 0");
    const std::size_t k = truth.peaks();
    if (k == 0 || truth.mu.size() != k || truth.b.size() != k) throw std::invalid_argument("spectral: malformed true parameters");
    for (std::size_t i = 0; i < k; ++i) {
      if (!(truth.mu[i] > 0.0 && truth.mu[i] < 1.0)) throw std::invalid_argument("spectral: true mu must lie in (0,1)");
      if (!(truth.a[i] > 0.0 && truth.b[i] > 0.0)) throw std::invalid_argument("spectral: true a and b must be positive");
    }
  }
};

struct SpectralData {
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline double peak_shape(double x, double mu, double b) {
  const double d = x - mu;
  return std::exp(-0.5 * b * d * d);
}

/// Σ_i (y_i - Σ_k a_k shape_k[i])² with peaks summed in index order. The one
/// summation routine shared by fresh and incremental evaluation.
inline double spectral_residual_sum(std::span<const double> y, std::span<const double> a,
                                    std::span<const double* const> shapes) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double f = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) f += a[k] * shapes[k][i];
    const double r = y[i] - f;
    total += r * r;
  }
  return total;
}

}  // namespace detail

/// 301 (or `points`) equispaced points on [0,1], endpoints included.
inline std::vector<double> spectral_grid(std::size_t points) {
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) x[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  return x;
}

inline double spectral_model(double x, const SpectralParams& params) {
  double f = 0.0;
  for (std::size_t k = 0; k < params.peaks(); ++k) f += params.a[k] * detail::peak_shape(x, params.mu[k], params.b[k]);
  return f;
}

/// y_i = f_K(x_i; truth) + N(0, σ²) noise from the spec's seed.
inline SpectralData generate_spectral_data(const SpectralSpec& spec) {
  spec.validate();
  SpectralData data;
  data.x = spectral_grid(spec.grid_points);
  data.y.resize(spec.grid_points);
  auto rng = make_stream(spec.seed, StreamPurpose::data, 0);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t i = 0; i < spec.grid_points; ++i) {
    const double eps = noise(rng);
    data.y[i] = spectral_model(data.x[i], spec.truth) + spec.sigma * eps;
  }
  return data;
}

/// E = Σ_i (y_i - f_K(x_i))² / (2σ² n) for n data points.
inline double spectral_energy(std::span<const double> coordinates, const SpectralData& data, double sigma) {
  if (coordinates.size() % 3 != 0 || coordinates.empty()) throw std::invalid_argument("spectral_energy: bad parameter count");
  if (!(sigma > 0.0)) throw std::invalid_argument("spectral_energy: sigma must be positive");
  const std::size_t k = coordinates.size() / 3;
  const std::size_t n = data.x.size();
  std::vector<double> a(k);
  std::vector<double> shapes(k * n);
  std::vector<const double*> rows(k);
  for (std::size_t p = 0; p < k; ++p) {
    a[p] = coordinates[3 * p];
    for (std::size_t i = 0; i < n; ++i) {
      shapes[p * n + i] = detail::peak_shape(data.x[i], coordinates[3 * p + 1], coordinates[3 * p + 2]);
    }
    rows[p] = shapes.data() + p * n;
  }
  return detail::spectral_residual_sum(data.y, a, rows) / (2.0 * sigma * sigma * static_cast<double>(n));
}

class SpectralProblem final : public TargetProblem {
 public:
  SpectralProblem(SpectralSpec spec, SpectralData data)
      : TargetProblem("spectral", box(spec), static_cast<double>(data.x.size())),
        spec_(std::move(spec)),
        data_(std::move(data)) {
    spec_.validate();
    if (data_.x.size() != data_.y.size()) throw std::invalid_argument("spectral: x and y lengths differ");
    if (!(spec_.sigma > 0.0)) throw std::invalid_argument("spectral: sigma must be positive for inference");
  }

  explicit SpectralProblem(const SpectralSpec& spec = {}) : SpectralProblem(spec, generate_spectral_data(spec)) {}

  const SpectralSpec& spec() const { return spec_; }
  const SpectralData& data() const { return data_; }

  double energy(std::span<const double> coordinates) const override {
    return spectral_energy(coordinates, data_, spec_.sigma);
  }

  std::unique_ptr<CoordinateEvaluator> make_evaluator() const override;

 private:
  static std::vector<Interval> box(const SpectralSpec& spec) {
    std::vector<Interval> b;
    for (std::size_t k = 0; k < spec.peaks(); ++k) {
      b.push_back(spec.a_prior);
      b.push_back(spec.mu_prior);
      b.push_back(spec.b_prior);
    }
    return b;
  }

  SpectralSpec spec_;
  SpectralData data_;
};

namespace detail {

/// Caches every peak's shape on the grid so a proposal recomputes at most one
/// peak (none for an amplitude move).
class SpectralEvaluator final : public CoordinateEvaluator {
 public:
  explicit SpectralEvaluator(const SpectralProblem& problem)
      : problem_(&problem),
        peaks_(problem.dimension() / 3),
        n_(problem.data().x.size()),
        coords_(problem.dimension()),
        a_(peaks_),
        shapes_(peaks_ * n_),
        scratch_(n_),
        rows_(peaks_) {}

  void load(std::span<const double> coordinates) override {
    coords_.assign(coordinates.begin(), coordinates.end());
    for (std::size_t k = 0; k < peaks_; ++k) {
      a_[k] = coords_[3 * k];
      fill_shape(k, shapes_.data() + k * n_);
      rows_[k] = shapes_.data() + k * n_;
    }
  }

  double propose(std::size_t index, double value) override {
    index_ = index;
    value_ = value;
    const std::size_t k = index / 3;
    const std::size_t which = index % 3;
    double total;
    if (which == 0) {
      const double saved = a_[k];
      a_[k] = value;
      total = spectral_residual_sum(problem_->data().y, a_, rows_);
      a_[k] = saved;
    } else {
      const double saved = coords_[index];
      coords_[index] = value;
      fill_shape(k, scratch_.data());
      coords_[index] = saved;
      rows_[k] = scratch_.data();
      total = spectral_residual_sum(problem_->data().y, a_, rows_);
      rows_[k] = shapes_.data() + k * n_;
    }
    const double sigma = problem_->spec().sigma;
    return total / (2.0 * sigma * sigma * static_cast<double>(n_));
  }

  void commit() override {
    const std::size_t k = index_ / 3;
    coords_[index_] = value_;
    if (index_ % 3 == 0) {
      a_[k] = value_;
    } else {
      std::copy(scratch_.begin(), scratch_.end(), shapes_.begin() + static_cast<std::ptrdiff_t>(k * n_));
    }
  }

 private:
  void fill_shape(std::size_t k, double* out) const {
    const auto& x = problem_->data().x;
    const double mu = coords_[3 * k + 1];
    const double b = coords_[3 * k + 2];
    for (std::size_t i = 0; i < n_; ++i) out[i] = peak_shape(x[i], mu, b);
  }

  const SpectralProblem* problem_;
  std::size_t peaks_;
  std::size_t n_;
  std::vector<double> coords_;
  std::vector<double> a_;
  std::vector<double> shapes_;
  std::vector<double> scratch_;
  std::vector<const double*> rows_;
  std::size_t index_ = 0;
  double value_ = 0.0;
};

}  // namespace detail

inline std::unique_ptr<CoordinateEvaluator> SpectralProblem::make_evaluator() const {
  return std::make_unique<detail::SpectralEvaluator>(*this);
}

}  // namespace semc
