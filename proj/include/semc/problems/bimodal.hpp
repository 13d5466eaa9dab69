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
#include <span>
#include <stdexcept>
#include <string>

#include "semc/core.hpp"
#include "semc/evidence.hpp"

namespace semc {

/// Two Gaussian wells on [0,1]² at θ₁ = 0.25 and 0.75. The left well is
/// narrower by √r in θ₁; the right one is raised by (r - 1)/16.
struct BimodalSpec {
  double r = 1.001;
  double n = 30000.0;

  void validate() const {
    if (!(r > 1.0) || !std::isfinite(r)) throw std::invalid_argument("bimodal: r must exceed 1");
    if (!(n >= 0.0) || !std::isfinite(n)) throw std::invalid_argument("bimodal: N must be finite and non-negative");
  }
};

inline double bimodal_energy(std::span<const double> theta, const BimodalSpec& spec) {
  if (theta.size() != 2) throw std::invalid_argument("bimodal_energy: expected two coordinates");
  const double t1 = theta[0];
  const double t2 = theta[1];
  if (!(t1 >= 0.0 && t1 <= 1.0 && t2 >= 0.0 && t2 <= 1.0)) throw std::invalid_argument("bimodal_energy: outside [0,1]^2");
  const double d2 = (t2 - 0.5) * (t2 - 0.5);
  if (t1 < 0.5) return spec.r * (t1 - 0.25) * (t1 - 0.25) + d2;
  return (t1 - 0.75) * (t1 - 0.75) + d2 + (spec.r - 1.0) / 16.0;
}

class BimodalProblem final : public TargetProblem {
 public:
  explicit BimodalProblem(BimodalSpec spec = {})
      : TargetProblem("bimodal", {Interval{0.0, 1.0}, Interval{0.0, 1.0}}, spec.n), spec_(spec) {
    spec_.validate();
  }

  const BimodalSpec& spec() const { return spec_; }

  double energy(std::span<const double> coordinates) const override { return bimodal_energy(coordinates, spec_); }

 private:
  BimodalSpec spec_;
};

struct ModeMasses {
  double left = 0.5;
  double right = 0.5;
};

/// Posterior mass of θ₁ < 0.5 and θ₁ >= 0.5 by the midpoint rule on a
/// `resolution` x `resolution` grid (resolution even, so no cell straddles
/// θ₁ = 0.5).
inline ModeMasses bimodal_mode_masses(const BimodalSpec& spec, std::size_t resolution = 4096) {
  spec.validate();
  if (resolution < 2 || resolution % 2 != 0) throw std::invalid_argument("mode masses: resolution must be even");
  const double h = 1.0 / static_cast<double>(resolution);
  LogSumExp left;
  LogSumExp right;
  double theta[2];
  for (std::size_t i = 0; i < resolution; ++i) {
    theta[0] = (static_cast<double>(i) + 0.5) * h;
    auto& side = theta[0] < 0.5 ? left : right;
    for (std::size_t k = 0; k < resolution; ++k) {
      theta[1] = (static_cast<double>(k) + 0.5) * h;
      side.add(-spec.n * bimodal_energy(theta, spec));
    }
  }
  const double l = left.value();
  const double r = right.value();
  const double m = std::max(l, r);
  const double wl = std::exp(l - m);
  const double wr = std::exp(r - m);
  return {wl / (wl + wr), wr / (wl + wr)};
}

}  // namespace semc
