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

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semc/core.hpp"
#include "semc/evidence.hpp"
#include "semc/metrics.hpp"
#include "semc/problems/exhaustive.hpp"
#include "semc/problems/spectral.hpp"

namespace semc::io {

inline constexpr int kSchemaVersion = 1;

/// %.17g: enough digits for every double to round-trip.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

inline std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                         std::vector<std::string>* header = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  if (header) {
    header->clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header->push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.empty()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw std::runtime_error(path.string() + ": not a number: " + cell);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_histogram_csv(const std::filesystem::path& path, const Histogram& h) {
  auto out = open_output(path);
  out << "bin_left,mass\n";
  for (std::size_t i = 0; i < h.bins(); ++i) out << format_double(h.bin_left(i)) << ',' << format_double(h.masses[i]) << '\n';
}

/// Reads a (bin_left, mass) CSV. Bin width and range are recovered from the
/// bin edges; unequal widths are rejected.
inline Histogram read_histogram_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path);
  if (rows.size() < 2) throw std::invalid_argument(path.string() + ": histogram needs at least two bins");
  Histogram h;
  const double width = rows[1][0] - rows[0][0];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw std::invalid_argument(path.string() + ": expected bin_left,mass rows");
    const double expected = rows[0][0] + width * static_cast<double>(i);
    if (std::abs(rows[i][0] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw std::invalid_argument(path.string() + ": bins are not equally spaced");
    }
    h.masses.push_back(rows[i][1]);
  }
  // Round to the nearest 1e-12 so widths written from equal binnings compare equal.
  auto snap = [](double v) { return std::round(v * 1e12) / 1e12; };
  h.bin_width = snap(width);
  h.lo = snap(rows[0][0]);
  h.hi = snap(rows[0][0] + width * static_cast<double>(rows.size()));
  return h;
}

/// result.json contents. `problem_data_size` is N; the per-gap stepping-stone
/// pieces are recomputed from the snapshots so F' can be rebuilt from the file.
inline nlohmann::json result_json(const RunResult& result, double data_size, const nlohmann::json& config) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["sampler"] = result.sampler;
  j["problem"] = result.problem;
  j["seed"] = result.seed;
  j["wall_time"] = result.wall_time;
  j["free_energy"] = result.free_energy;
  j["data_size"] = data_size;
  j["ladder"] = {{"betas", result.ladder.betas}, {"step_sizes", result.ladder.step_sizes}};
  j["exchange_rates"] = result.exchange_rates;
  j["predicted_exchange_rates"] = result.predicted_exchange_rates;
  j["metropolis_rates"] = result.metropolis_rates;
  j["initial_step_sizes"] = result.initial_step_sizes;
  nlohmann::json rungs = nlohmann::json::array();
  for (std::size_t l = 0; l < result.snapshots.size(); ++l) {
    const auto& s = result.snapshots[l];
    nlohmann::json r{{"beta", s.beta}, {"size", s.size()}};
    if (l + 1 < result.snapshots.size()) {
      const auto term = stepping_stone_term(s.energies, result.snapshots[l + 1].beta - s.beta, data_size);
      r["energy_min"] = term.energy_min;
      r["log_mean_shifted"] = term.log_mean_shifted;
      r["scale"] = term.scale;
    }
    rungs.push_back(r);
  }
  j["rungs"] = rungs;
  j["config"] = config;
  return j;
}

/// F' rebuilt from the per-rung summaries of a result.json.
inline double free_energy_from_json(const nlohmann::json& j) {
  double total = 0.0;
  for (const auto& r : j.at("rungs")) {
    if (!r.contains("scale")) continue;
    SteppingStoneTerm t{r.at("energy_min").get<double>(), r.at("log_mean_shifted").get<double>(),
                        r.at("scale").get<double>()};
    total += t.value();
  }
  return total;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

/// One row per retained state: coordinates then energy.
inline void write_samples_csv(const std::filesystem::path& path, const EnsembleSnapshot& s) {
  auto out = open_output(path);
  for (std::size_t j = 0; j < s.dimension; ++j) out << "theta_" << j << ',';
  out << "energy\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.has_states()) {
      for (double v : s.state(i)) out << format_double(v) << ',';
    }
    out << format_double(s.energies[i]) << '\n';
  }
}

/// Per rung: β, exchange rates, mean Metropolis acceptance and step sizes.
inline void write_diagnostics_csv(const std::filesystem::path& path, const RunResult& r, std::size_t dimension) {
  auto out = open_output(path);
  const bool has_steps = r.ladder.step_sizes.size() > 1 && !r.ladder.step_sizes.back().empty();
  out << "rung,beta,exchange_rate,predicted_exchange_rate,metropolis_rate";
  if (has_steps) {
    for (std::size_t j = 0; j < dimension; ++j) out << ",eps_" << j;
  }
  out << '\n';
  for (std::size_t l = 0; l < r.ladder.size(); ++l) {
    out << l << ',' << format_double(r.ladder.betas[l]) << ',';
    if (l > 0 && l - 1 < r.exchange_rates.size()) out << format_double(r.exchange_rates[l - 1]);
    out << ',';
    if (l > 0 && l - 1 < r.predicted_exchange_rates.size()) out << format_double(r.predicted_exchange_rates[l - 1]);
    out << ',';
    if (l < r.metropolis_rates.size() && !r.metropolis_rates[l].empty()) {
      double m = 0.0;
      for (double v : r.metropolis_rates[l]) m += v;
      out << format_double(m / static_cast<double>(r.metropolis_rates[l].size()));
    }
    if (has_steps) {
      for (std::size_t j = 0; j < dimension; ++j) {
        out << ',';
        if (!r.ladder.step_sizes[l].empty()) out << format_double(r.ladder.step_sizes[l][j]);
      }
    }
    out << '\n';
  }
}

inline nlohmann::json spectral_spec_json(const SpectralSpec& s) {
  return {{"grid_points", s.grid_points}, {"sigma", s.sigma},   {"a", s.truth.a},
          {"mu", s.truth.mu},             {"b", s.truth.b},     {"seed", s.seed},
          {"a_prior", {s.a_prior.low, s.a_prior.high}},
          {"mu_prior", {s.mu_prior.low, s.mu_prior.high}},
          {"b_prior", {s.b_prior.low, s.b_prior.high}}};
}

inline SpectralSpec spectral_spec_from_json(const nlohmann::json& j, SpectralSpec s = {}) {
  if (j.contains("grid_points")) s.grid_points = j["grid_points"].get<std::size_t>();
  if (j.contains("sigma")) s.sigma = j["sigma"].get<double>();
  if (j.contains("a")) s.truth.a = j["a"].get<std::vector<double>>();
  if (j.contains("mu")) s.truth.mu = j["mu"].get<std::vector<double>>();
  if (j.contains("b")) s.truth.b = j["b"].get<std::vector<double>>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  auto interval = [&](const char* key, Interval& iv) {
    if (j.contains(key)) iv = {j[key].at(0).get<double>(), j[key].at(1).get<double>()};
  };
  interval("a_prior", s.a_prior);
  interval("mu_prior", s.mu_prior);
  interval("b_prior", s.b_prior);
  s.validate();
  return s;
}

inline nlohmann::json exhaustive_spec_json(const ExhaustiveSpec& s) {
  return {{"rows", s.rows}, {"predictors", s.predictors}, {"s", s.s}, {"noise_variance", s.noise_variance},
          {"true_support", s.true_support}, {"seed", s.seed}};
}

inline ExhaustiveSpec exhaustive_spec_from_json(const nlohmann::json& j, ExhaustiveSpec s = {}) {
  if (j.contains("rows")) s.rows = j["rows"].get<std::size_t>();
  if (j.contains("predictors")) s.predictors = j["predictors"].get<std::size_t>();
  if (j.contains("s")) s.s = j["s"].get<double>();
  if (j.contains("noise_variance")) s.noise_variance = j["noise_variance"].get<double>();
  if (j.contains("true_support")) s.true_support = j["true_support"].get<std::vector<std::size_t>>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  s.validate();
  return s;
}

/// data.csv (x,y) plus data.json describing the spec and seed.
inline void write_spectral_dataset(const std::filesystem::path& dir, const SpectralSpec& spec, const SpectralData& data) {
  auto out = open_output(dir / "data.csv");
  out << "x,y\n";
  for (std::size_t i = 0; i < data.x.size(); ++i) out << format_double(data.x[i]) << ',' << format_double(data.y[i]) << '\n';
  write_json(dir / "data.json", {{"problem", "spectral"}, {"spec", spectral_spec_json(spec)}});
}

inline std::pair<SpectralSpec, SpectralData> read_spectral_dataset(const std::filesystem::path& dir) {
  const auto meta = read_json(dir / "data.json");
  const auto spec = spectral_spec_from_json(meta.at("spec"));
  SpectralData data;
  for (const auto& row : read_numeric_csv(dir / "data.csv")) {
    if (row.size() != 2) throw std::invalid_argument("spectral data.csv must have x,y rows");
    data.x.push_back(row[0]);
    data.y.push_back(row[1]);
  }
  return {spec, data};
}

/// data.csv (x_0..x_{p-1}, y) plus data.json with the spec and true coefficients.
inline void write_exhaustive_dataset(const std::filesystem::path& dir, const ExhaustiveSpec& spec,
                                     const RegressionData& data) {
  auto out = open_output(dir / "data.csv");
  for (Eigen::Index j = 0; j < data.x.cols(); ++j) out << "x_" << j << ',';
  out << "y\n";
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.x.cols(); ++j) out << format_double(data.x(i, j)) << ',';
    out << format_double(data.y(i)) << '\n';
  }
  std::vector<double> coef(data.coefficients.data(), data.coefficients.data() + data.coefficients.size());
  write_json(dir / "data.json", {{"problem", "exhaustive"}, {"spec", exhaustive_spec_json(spec)}, {"coefficients", coef}});
}

inline std::pair<ExhaustiveSpec, RegressionData> read_exhaustive_dataset(const std::filesystem::path& dir) {
  const auto meta = read_json(dir / "data.json");
  const auto spec = exhaustive_spec_from_json(meta.at("spec"));
  const auto rows = read_numeric_csv(dir / "data.csv");
  RegressionData data;
  const auto p = static_cast<Eigen::Index>(spec.predictors);
  data.x.resize(static_cast<Eigen::Index>(rows.size()), p);
  data.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != spec.predictors + 1) throw std::invalid_argument("exhaustive data.csv has the wrong width");
    for (Eigen::Index j = 0; j < p; ++j) data.x(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    data.y(static_cast<Eigen::Index>(i)) = rows[i].back();
  }
  const auto coef = meta.at("coefficients").get<std::vector<double>>();
  data.coefficients = Eigen::Map<const Eigen::VectorXd>(coef.data(), static_cast<Eigen::Index>(coef.size()));
  return {spec, data};
}

}  // namespace semc::io
