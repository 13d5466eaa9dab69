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

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semc/core.hpp"
#include "semc/random.hpp"

namespace semc {

/// Bayesian variable selection: y = X (β ⊙ c) + ε with β_j ~ N(0, s²),
/// ε ~ N(0, σ² I), and a uniform prior over the indicator vector c.
struct ExhaustiveSpec {
  std::size_t rows = 50;
  std::size_t predictors = 10;
  double s = 1.0;
  /// σ² of the noise covariance σ² I.
  double noise_variance = 0.1;
  std::vector<std::size_t> true_support{0, 1, 2};
  std::uint64_t seed = 1;

  static ExhaustiveSpec desk() { return {}; }

  static ExhaustiveSpec full() {
    ExhaustiveSpec spec;
    spec.rows = 700;
    spec.predictors = 200;
    spec.true_support = {0, 1, 2, 3};
    return spec;
  }

  void validate() const {
    if (rows == 0 || predictors == 0) throw std::invalid_argument("exhaustive: rows and predictors must be positive");
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("exhaustive: s must be positive");
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
      throw std::invalid_argument("exhaustive: noise variance must be positive");
    }
    for (auto j : true_support) {
      if (j >= predictors) throw std::invalid_argument("exhaustive: true support index out of range");
    }
  }
};

struct RegressionData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  /// Generating coefficients (zero off the true support).
  Eigen::VectorXd coefficients;
};

/// X_ij ~ N(0,1); β_j ~ N(0, s²) on the true support; y = X β + N(0, σ²) noise.
/// `noise_scale` multiplies the noise draw (0 gives noiseless data).
inline RegressionData generate_exhaustive_data(const ExhaustiveSpec& spec, double noise_scale = 1.0) {
  spec.validate();
  auto rng = make_stream(spec.seed, StreamPurpose::data, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  RegressionData data;
  data.x.resize(static_cast<Eigen::Index>(spec.rows), static_cast<Eigen::Index>(spec.predictors));
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) data.x(i, j) = normal(rng);
  }
  data.coefficients = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.predictors));
  for (auto j : spec.true_support) data.coefficients(static_cast<Eigen::Index>(j)) = spec.s * normal(rng);
  data.y = data.x * data.coefficients;
  const double sd = std::sqrt(spec.noise_variance) * noise_scale;
  for (Eigen::Index i = 0; i < data.y.size(); ++i) data.y(i) += sd * normal(rng);
  return data;
}

namespace detail {

/// Reusable storage for one marginal-likelihood evaluation.
struct ExhaustiveWorkspace {
  std::vector<Eigen::Index> active;
  std::vector<double> matrix;
  std::vector<double> rhs;
};

}  // namespace detail

/// E(c) = -log p(y | c, X) / N with β integrated out:
///   N E = K log s + ½ N log(2πσ²) + ½ log det A - ½ bᵀA⁻¹b + ½ yᵀy/σ²,
/// A = X_Iᵀ X_I/σ² + I/s², b = X_Iᵀ y/σ², I the selected columns, K = |I|.
class ExhaustiveProblem final : public TargetProblem {
 public:
  ExhaustiveProblem(ExhaustiveSpec spec, RegressionData data)
      : TargetProblem("exhaustive", spec.predictors, static_cast<double>(spec.rows)),
        spec_(std::move(spec)),
        data_(std::move(data)) {
    spec_.validate();
    if (data_.x.rows() != static_cast<Eigen::Index>(spec_.rows) ||
        data_.x.cols() != static_cast<Eigen::Index>(spec_.predictors) || data_.y.size() != data_.x.rows()) {
      throw std::invalid_argument("exhaustive: data dimensions do not match the spec");
    }
    const double inv_var = 1.0 / spec_.noise_variance;
    gram_ = data_.x.transpose() * data_.x * inv_var;
    xty_ = data_.x.transpose() * data_.y * inv_var;
    yty_ = data_.y.squaredNorm() * inv_var;
    base_ = 0.5 * static_cast<double>(spec_.rows) * std::log(2.0 * std::numbers::pi * spec_.noise_variance);
    log_s_ = std::log(spec_.s);
    prior_precision_ = 1.0 / (spec_.s * spec_.s);
  }

  explicit ExhaustiveProblem(const ExhaustiveSpec& spec = {})
      : ExhaustiveProblem(spec, generate_exhaustive_data(spec)) {}

  const ExhaustiveSpec& spec() const { return spec_; }
  const RegressionData& data() const { return data_; }

  double energy(std::span<const double> coordinates) const override {
    detail::ExhaustiveWorkspace ws;
    return energy(coordinates, ws);
  }

  /// Same value as energy(coordinates), reusing `ws` across calls.
  double energy(std::span<const double> bits, detail::ExhaustiveWorkspace& ws) const {
    if (bits.size() != dimension()) throw std::invalid_argument("exhaustive_energy: wrong indicator length");
    ws.active.clear();
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] != 0.0) ws.active.push_back(static_cast<Eigen::Index>(j));
    }
    const auto k = static_cast<Eigen::Index>(ws.active.size());
    double total = base_ + 0.5 * yty_;
    if (k == 0) return total / data_size();
    ws.matrix.resize(static_cast<std::size_t>(k * k));
    ws.rhs.resize(static_cast<std::size_t>(k));
    Eigen::Map<Eigen::MatrixXd> a(ws.matrix.data(), k, k);
    Eigen::Map<Eigen::VectorXd> b(ws.rhs.data(), k);
    for (Eigen::Index c = 0; c < k; ++c) {
      for (Eigen::Index r = c; r < k; ++r) a(r, c) = gram_(ws.active[r], ws.active[c]);
      a(c, c) += prior_precision_;
      b(c) = xty_(ws.active[c]);
    }
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>, Eigen::Lower> llt(a);
    if (llt.info() != Eigen::Success) throw std::runtime_error("exhaustive_energy: factorization failed");
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) log_det += std::log(a(i, i));
    log_det *= 2.0;
    llt.matrixL().solveInPlace(b);
    total += static_cast<double>(k) * log_s_ + 0.5 * log_det - 0.5 * b.squaredNorm();
    return total / data_size();
  }

  std::unique_ptr<CoordinateEvaluator> make_evaluator() const override;

 private:
  ExhaustiveSpec spec_;
  RegressionData data_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd xty_;
  double yty_ = 0.0;
  double base_ = 0.0;
  double log_s_ = 0.0;
  double prior_precision_ = 1.0;
};

namespace detail {

class ExhaustiveEvaluator final : public CoordinateEvaluator {
 public:
  explicit ExhaustiveEvaluator(const ExhaustiveProblem& problem) : problem_(&problem) {}

  void load(std::span<const double> coordinates) override { bits_.assign(coordinates.begin(), coordinates.end()); }

  double propose(std::size_t index, double value) override {
    index_ = index;
    value_ = value;
    const double saved = bits_[index];
    bits_[index] = value;
    const double e = problem_->energy(bits_, workspace_);
    bits_[index] = saved;
    return e;
  }

  void commit() override { bits_[index_] = value_; }

 private:
  const ExhaustiveProblem* problem_;
  std::vector<double> bits_;
  ExhaustiveWorkspace workspace_;
  std::size_t index_ = 0;
  double value_ = 0.0;
};

}  // namespace detail

inline std::unique_ptr<CoordinateEvaluator> ExhaustiveProblem::make_evaluator() const {
  return std::make_unique<detail::ExhaustiveEvaluator>(*this);
}

}  // namespace semc
