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


#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semc/io.hpp"
#include "semc/semc.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

constexpr double kBimodalBinWidth = 0.001;
constexpr double kMuBinWidth = 0.005;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Values given on the command line; each one overrides the matching config key.
struct Overrides {
  std::string config;
  std::string preset;
  std::optional<std::string> problem;
  std::optional<std::string> variant;
  std::optional<std::string> dataset;
  std::optional<std::uint64_t> data_seed;
  std::optional<std::string> sampler;
  std::optional<std::size_t> T;
  std::optional<std::size_t> S;
  std::optional<std::size_t> n;
  std::optional<std::size_t> L;
  std::optional<std::size_t> burn_in;
  std::optional<double> J;
  std::optional<double> gamma;
  std::optional<bool> no_exchange;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> threads;
  std::optional<std::string> out;
};

json default_config() {
  return {{"problem", {{"name", "bimodal"}, {"variant", ""}, {"spec", json::object()}, {"dataset", ""}}},
          {"sampler", {{"name", "semc"}, {"T", 10000}, {"S", 50}, {"n", 1}, {"L", 30}, {"J", 0.5}, {"exchange", true}}},
          {"seed", 1},
          {"trials", 1},
          {"threads", 0},
          {"output_dir", ""}};
}

json preset_patch(const std::string& name) {
  if (name.empty()) return json::object();
  if (name == "desk") return {{"sampler", {{"T", 10000}}}, {"trials", 3}};
  if (name == "paper") return {{"sampler", {{"T", 300000}, {"L", 300}}}, {"trials", 10}};
  throw UsageError("unknown preset '" + name + "' (expected desk or paper)");
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  if (!fs::exists(path)) throw UsageError("config file not found: " + path);
  try {
    return semc::io::read_json(path);
  } catch (const json::exception& e) {
    throw UsageError("cannot parse config " + path + ": " + e.what());
  }
}

/// defaults < preset < config file < command-line flags.
json resolve_config(const Overrides& o, json base) {
  const json file = load_config_file(o.config);
  std::string preset = o.preset;
  if (preset.empty() && file.contains("preset")) preset = file["preset"].get<std::string>();
  base.merge_patch(preset_patch(preset));
  base.merge_patch(file);
  base.erase("preset");
  auto& p = base["problem"];
  auto& s = base["sampler"];
  if (o.problem) p["name"] = *o.problem;
  if (o.variant) p["variant"] = *o.variant;
  if (o.dataset) p["dataset"] = *o.dataset;
  if (o.data_seed) p["spec"]["seed"] = *o.data_seed;
  if (o.sampler) s["name"] = *o.sampler;
  if (o.T) s["T"] = *o.T;
  if (o.S) s["S"] = *o.S;
  if (o.n) s["n"] = *o.n;
  if (o.L) s["L"] = *o.L;
  if (o.burn_in) s["burn_in"] = *o.burn_in;
  if (o.J) s["J"] = *o.J;
  if (o.gamma) s["gamma"] = *o.gamma;
  if (o.no_exchange && *o.no_exchange) s["exchange"] = false;
  if (o.seed) base["seed"] = *o.seed;
  if (o.trials) base["trials"] = *o.trials;
  if (o.threads) base["threads"] = *o.threads;
  if (o.out) base["output_dir"] = *o.out;
  if (base["trials"].get<std::size_t>() == 0) throw UsageError("trials must be at least 1");
  return base;
}

fs::path output_root() {
  const char* env = std::getenv("SEMC_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::path("results");
}

fs::path output_dir(const json& cfg, const std::string& fallback) {
  const auto out = cfg["output_dir"].get<std::string>();
  return out.empty() ? output_root() / fallback : fs::path(out);
}

struct LoadedProblem {
  std::unique_ptr<semc::TargetProblem> problem;
  /// Resolved problem description echoed into result.json.
  json description;
};

semc::SpectralSpec spectral_base(const std::string& variant) {
  if (variant.empty() || variant == "K3") return semc::SpectralSpec::three_peaks();
  if (variant == "K10") return semc::SpectralSpec::ten_peaks();
  throw UsageError("unknown spectral variant '" + variant + "' (expected K3 or K10)");
}

semc::ExhaustiveSpec exhaustive_base(const std::string& variant) {
  if (variant.empty() || variant == "desk") return semc::ExhaustiveSpec::desk();
  if (variant == "full") return semc::ExhaustiveSpec::full();
  throw UsageError("unknown exhaustive variant '" + variant + "' (expected desk or full)");
}

LoadedProblem load_problem(const json& p) {
  const auto name = p.at("name").get<std::string>();
  const auto variant = p.value("variant", std::string());
  const auto dataset = p.value("dataset", std::string());
  const json spec = p.value("spec", json::object());
  if (!dataset.empty() && !fs::exists(fs::path(dataset) / "data.json")) {
    throw UsageError("dataset not found: " + dataset);
  }
  if (name == "bimodal") {
    semc::BimodalSpec s;
    if (spec.contains("r")) s.r = spec["r"].get<double>();
    if (spec.contains("n")) s.n = spec["n"].get<double>();
    return {std::make_unique<semc::BimodalProblem>(s), {{"name", name}, {"spec", {{"r", s.r}, {"n", s.n}}}}};
  }
  if (name == "spectral") {
    auto [s, data] = dataset.empty() ? std::pair{semc::io::spectral_spec_from_json(spec, spectral_base(variant)),
                                                 semc::SpectralData{}}
                                     : semc::io::read_spectral_dataset(dataset);
    if (dataset.empty()) data = semc::generate_spectral_data(s);
    json d{{"name", name}, {"variant", variant.empty() ? "K3" : variant}, {"spec", semc::io::spectral_spec_json(s)}};
    if (!dataset.empty()) d["dataset"] = dataset;
    return {std::make_unique<semc::SpectralProblem>(s, std::move(data)), d};
  }
  if (name == "exhaustive") {
    auto [s, data] = dataset.empty() ? std::pair{semc::io::exhaustive_spec_from_json(spec, exhaustive_base(variant)),
                                                 semc::RegressionData{}}
                                     : semc::io::read_exhaustive_dataset(dataset);
    if (dataset.empty()) data = semc::generate_exhaustive_data(s);
    json d{{"name", name}, {"variant", variant.empty() ? "desk" : variant}, {"spec", semc::io::exhaustive_spec_json(s)}};
    if (!dataset.empty()) d["dataset"] = dataset;
    return {std::make_unique<semc::ExhaustiveProblem>(s, std::move(data)), d};
  }
  throw UsageError("unknown problem '" + name + "' (expected bimodal, spectral or exhaustive)");
}

/// Runs the configured sampler; `echo` receives the resolved sampler settings.
semc::RunResult run_sampler(const semc::TargetProblem& problem, const json& s, std::uint64_t seed,
                            std::size_t threads_requested, json& echo) {
  const auto name = s.at("name").get<std::string>();
  const auto T = s.at("T").get<std::size_t>();
  const double J = s.at("J").get<double>();
  if (name == "semc") {
    semc::SemcConfig cfg;
    cfg.T = T;
    cfg.S = s.at("S").get<std::size_t>();
    cfg.exchange_enabled = s.at("exchange").get<bool>();
    cfg.settings.exchange.j_target = J;
    cfg.settings.threads = semc::WorkerPool::resolve_threads(threads_requested, cfg.S);
    echo = {{"name", name}, {"T", cfg.T}, {"S", cfg.S}, {"J", J}, {"exchange", cfg.exchange_enabled}};
    return semc::run_semc(problem, cfg, seed);
  }
  if (name == "smcs" || name == "wfsmc") {
    semc::SmcsConfig cfg;
    cfg.T = T;
    cfg.n = s.at("n").get<std::size_t>();
    cfg.settings.exchange.j_target = J;
    if (name == "wfsmc") {
      cfg.burn_in = s.value("burn_in", std::size_t{0});
      cfg.settings.threads = semc::WorkerPool::resolve_threads(threads_requested, cfg.n == 0 ? 1 : T / cfg.n);
      echo = {{"name", name}, {"T", cfg.T}, {"n", cfg.n}, {"burn_in", cfg.burn_in}, {"J", J}};
      return semc::run_waste_free_smc(problem, cfg, seed);
    }
    cfg.settings.threads = semc::WorkerPool::resolve_threads(threads_requested, T);
    echo = {{"name", name}, {"T", cfg.T}, {"n", cfg.n}, {"J", J}};
    return semc::run_smcs(problem, cfg, seed);
  }
  if (name == "remc") {
    semc::RemcConfig cfg;
    cfg.L = s.at("L").get<std::size_t>();
    cfg.samples = T;
    cfg.burn_in = s.contains("burn_in") ? s["burn_in"].get<std::size_t>() : T;
    cfg.auto_j_target = J;
    if (s.contains("gamma") && !s["gamma"].is_null()) cfg.gamma = s["gamma"].get<double>();
    cfg.threads = semc::WorkerPool::resolve_threads(threads_requested, cfg.L);
    echo = {{"name", name}, {"L", cfg.L}, {"T", cfg.samples}, {"burn_in", cfg.burn_in}, {"J", J}};
    if (cfg.gamma) echo["gamma"] = *cfg.gamma;
    return semc::run_remc(problem, cfg, seed);
  }
  throw UsageError("unknown sampler '" + name + "' (expected semc, remc, smcs or wfsmc)");
}

std::string slot_file(std::size_t k) { return "hist_mu_slot_" + std::to_string(k) + ".csv"; }

/// Histograms of the final-rung states that `compare` matches by file name.
void write_histograms(const fs::path& dir, const semc::TargetProblem& problem, const semc::EnsembleSnapshot& s) {
  if (!s.has_states()) return;
  if (problem.label() == "bimodal") {
    const auto t1 = s.coordinate(0);
    semc::io::write_histogram_csv(dir / "hist_theta_0.csv", semc::build_histogram(t1, 0.0, 1.0, kBimodalBinWidth));
  } else if (problem.label() == "spectral") {
    const auto hs = semc::sorted_mu_histograms(s, 0.0, 1.0, kMuBinWidth);
    for (std::size_t k = 0; k < hs.size(); ++k) semc::io::write_histogram_csv(dir / slot_file(k), hs[k]);
  } else if (problem.label() == "exhaustive") {
    auto out = semc::io::open_output(dir / "inclusion.csv");
    out << "predictor,probability\n";
    for (std::size_t j = 0; j < s.dimension; ++j) {
      double m = 0.0;
      for (double v : s.coordinate(j)) m += v;
      out << j << ',' << semc::io::format_double(m / static_cast<double>(s.size())) << '\n';
    }
  }
}

void write_run(const fs::path& dir, const semc::TargetProblem& problem, const semc::RunResult& r, const json& echo) {
  fs::create_directories(dir);
  semc::io::write_json(dir / "result.json", semc::io::result_json(r, problem.data_size(), echo));
  semc::io::write_samples_csv(dir / "samples_rung_final.csv", r.snapshots.back());
  semc::io::write_diagnostics_csv(dir / "diagnostics.csv", r, problem.dimension());
  write_histograms(dir, problem, r.snapshots.back());
}

std::string trial_name(std::size_t i) {
  std::ostringstream os;
  os << "trial_" << std::setw(3) << std::setfill('0') << i;
  return os.str();
}

int cmd_run(const Overrides& o) {
  const json cfg = resolve_config(o, default_config());
  const auto loaded = load_problem(cfg["problem"]);
  const auto seed = cfg["seed"].get<std::uint64_t>();
  const auto trials = cfg["trials"].get<std::size_t>();
  const auto threads = cfg["threads"].get<std::size_t>();
  const auto dir = output_dir(cfg, loaded.problem->label() + "_" + cfg["sampler"]["name"].get<std::string>() +
                                       "_seed" + std::to_string(seed));
  for (std::size_t t = 0; t < trials; ++t) {
    json sampler_echo;
    const auto result = run_sampler(*loaded.problem, cfg["sampler"], seed + t, threads, sampler_echo);
    const json echo{{"problem", loaded.description}, {"sampler", sampler_echo}, {"seed", seed + t}};
    const auto trial_dir = trials == 1 ? dir : dir / trial_name(t);
    write_run(trial_dir, *loaded.problem, result, echo);
    std::cout << trial_dir.string() << ": " << result.sampler << " F' = " << semc::io::format_double(result.free_energy)
              << " rungs = " << result.ladder.size() << " wall_time = " << result.wall_time << " s\n";
  }
  return kExitOk;
}

int cmd_reference(const Overrides& o) {
  json base = default_config();
  base["sampler"] = {{"name", "remc"}, {"T", 100000}, {"L", 50}, {"J", 0.5}, {"S", 50}, {"n", 1}, {"exchange", true}};
  const json cfg = resolve_config(o, base);
  const auto loaded = load_problem(cfg["problem"]);
  const auto& problem = *loaded.problem;
  const auto dir = output_dir(cfg, "reference_" + problem.label());
  fs::create_directories(dir);
  json ref{{"problem", loaded.description}};
  if (problem.label() == "bimodal") {
    const auto q = semc::reference_free_energy_quadrature_converged(problem);
    ref["method"] = "quadrature";
    ref["free_energy"] = q.free_energy;
    ref["resolution"] = q.resolution;
    semc::io::write_histogram_csv(dir / "hist_theta_0.csv",
                                  semc::reference_marginal_histogram(problem, 0, kBimodalBinWidth));
  } else if (problem.kind() == semc::ProblemKind::binary && problem.dimension() <= 20) {
    ref["method"] = "enumeration";
    ref["free_energy"] = semc::reference_free_energy_enumeration(problem);
  } else {
    json sampler_echo;
    const auto seed = cfg["seed"].get<std::uint64_t>();
    const auto result = run_sampler(problem, cfg["sampler"], seed, cfg["threads"].get<std::size_t>(), sampler_echo);
    write_run(dir, problem, result, {{"problem", loaded.description}, {"sampler", sampler_echo}, {"seed", seed}});
    ref["method"] = "remc";
    ref["free_energy"] = result.free_energy;
    ref["sampler"] = sampler_echo;
    ref["seed"] = seed;
  }
  semc::io::write_json(dir / "reference.json", ref);
  std::cout << dir.string() << ": " << ref["method"].get<std::string>()
            << " F' = " << semc::io::format_double(ref["free_energy"].get<double>()) << '\n';
  return kExitOk;
}

int cmd_generate_data(const Overrides& o) {
  const json cfg = resolve_config(o, default_config());
  const auto& p = cfg["problem"];
  const auto name = p["name"].get<std::string>();
  const auto variant = p.value("variant", std::string());
  const json spec = p.value("spec", json::object());
  const auto dir = output_dir(cfg, "data_" + name);
  if (name == "spectral") {
    const auto s = semc::io::spectral_spec_from_json(spec, spectral_base(variant));
    semc::io::write_spectral_dataset(dir, s, semc::generate_spectral_data(s));
  } else if (name == "exhaustive") {
    const auto s = semc::io::exhaustive_spec_from_json(spec, exhaustive_base(variant));
    semc::io::write_exhaustive_dataset(dir, s, semc::generate_exhaustive_data(s));
  } else {
    throw UsageError("generate-data supports spectral and exhaustive problems");
  }
  std::cout << dir.string() << '\n';
  return kExitOk;
}

struct RunRecord {
  std::string group;
  double free_energy = 0.0;
  double wall_time = 0.0;
  std::optional<double> w1;
};

/// Expands a directory holding trial_* subdirectories into the trial directories.
std::vector<fs::path> expand_results(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::exists(p / "result.json")) {
      out.push_back(p);
      continue;
    }
    std::vector<fs::path> trials;
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_directory() && fs::exists(e.path() / "result.json")) trials.push_back(e.path());
      }
    }
    if (trials.empty()) throw UsageError("no result.json under " + in);
    std::sort(trials.begin(), trials.end());
    out.insert(out.end(), trials.begin(), trials.end());
  }
  return out;
}

std::string group_label(const json& result) {
  std::string label = result.at("sampler").get<std::string>();
  const auto& s = result.at("config").value("sampler", json::object());
  for (const char* key : {"T", "S", "n", "L", "burn_in"}) {
    if (s.contains(key)) label += std::string(" ") + key + "=" + s[key].dump();
  }
  if (s.contains("exchange") && !s["exchange"].get<bool>()) label += " no-exchange";
  return label;
}

/// Mean W1 over histogram files present in both directories.
std::optional<double> mean_w1(const fs::path& result_dir, const fs::path& reference_dir) {
  double total = 0.0;
  std::size_t count = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(result_dir)) {
    const auto name = e.path().filename().string();
    if (name.rfind("hist_", 0) == 0 && e.path().extension() == ".csv") files.push_back(e.path().filename());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    if (!fs::exists(reference_dir / f)) continue;
    const auto h = semc::io::read_histogram_csv(result_dir / f);
    const auto r = semc::io::read_histogram_csv(reference_dir / f);
    if (!h.same_binning(r)) throw UsageError("binning mismatch in " + f.string());
    total += semc::wasserstein1(h, r);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return total / static_cast<double>(count);
}

int cmd_compare(const std::vector<std::string>& inputs, const std::string& reference, const std::string& csv_path) {
  if (inputs.empty()) throw UsageError("compare needs at least one result");
  const fs::path ref_dir(reference);
  double ref_f = 0.0;
  if (fs::exists(ref_dir / "reference.json")) {
    ref_f = semc::io::read_json(ref_dir / "reference.json").at("free_energy").get<double>();
  } else if (fs::exists(ref_dir / "result.json")) {
    ref_f = semc::io::read_json(ref_dir / "result.json").at("free_energy").get<double>();
  } else {
    throw UsageError("no reference.json or result.json in " + reference);
  }
  std::vector<RunRecord> records;
  for (const auto& dir : expand_results(inputs)) {
    const auto j = semc::io::read_json(dir / "result.json");
    records.push_back({group_label(j), j.at("free_energy").get<double>(), j.at("wall_time").get<double>(),
                       mean_w1(dir, ref_dir)});
  }
  struct Row {
    std::size_t trials = 0;
    double abs_df = 0.0;
    double w1 = 0.0;
    std::size_t w1_count = 0;
    double wall = 0.0;
  };
  std::vector<std::string> order;
  std::map<std::string, Row> rows;
  for (const auto& r : records) {
    if (!rows.count(r.group)) order.push_back(r.group);
    auto& row = rows[r.group];
    ++row.trials;
    row.abs_df += std::abs(r.free_energy - ref_f);
    row.wall += r.wall_time;
    if (r.w1) {
      row.w1 += *r.w1;
      ++row.w1_count;
    }
  }
  std::ostringstream csv;
  csv << "group,trials,mean_abs_delta_f,mean_w1,mean_wall_time\n";
  std::cout << std::left << std::setw(40) << "group" << std::right << std::setw(8) << "trials" << std::setw(16)
            << "mean|dF'|" << std::setw(14) << "mean W1" << std::setw(14) << "wall [s]" << '\n';
  for (const auto& g : order) {
    const auto& row = rows[g];
    const double t = static_cast<double>(row.trials);
    const std::optional<double> w1 =
        row.w1_count ? std::optional<double>(row.w1 / static_cast<double>(row.w1_count)) : std::nullopt;
    csv << '"' << g << "\"," << row.trials << ',' << semc::io::format_double(row.abs_df / t) << ','
        << (w1 ? semc::io::format_double(*w1) : "") << ',' << semc::io::format_double(row.wall / t) << '\n';
    std::cout << std::left << std::setw(40) << g << std::right << std::setw(8) << row.trials << std::setw(16)
              << std::setprecision(6) << row.abs_df / t << std::setw(14);
    if (w1) {
      std::cout << *w1;
    } else {
      std::cout << "-";
    }
    std::cout << std::setw(14) << row.wall / t << '\n';
  }
  if (!csv_path.empty()) {
    auto out = semc::io::open_output(csv_path);
    out << csv.str();
  }
  return kExitOk;
}

void add_common_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--preset", o.preset, "Scale preset: desk or paper");
  cmd->add_option("--problem", o.problem, "bimodal, spectral or exhaustive");
  cmd->add_option("--variant", o.variant, "K3 or K10 (spectral), desk or full (exhaustive)");
  cmd->add_option("--dataset", o.dataset, "Directory written by generate-data");
  cmd->add_option("--data-seed", o.data_seed, "Seed of the synthetic dataset");
  cmd->add_option("--out", o.out, "Output directory");
}

void add_sampler_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--sampler", o.sampler, "semc, remc, smcs or wfsmc");
  cmd->add_option("--T", o.T, "Samples per rung");
  cmd->add_option("--S", o.S, "SEMC parallel chains");
  cmd->add_option("--n", o.n, "SMC kernel steps per rung");
  cmd->add_option("--L", o.L, "REMC rungs");
  cmd->add_option("--burn-in", o.burn_in, "REMC burn-in sweeps, waste-free SMC burn-in");
  cmd->add_option("--J", o.J, "Target exchange rate");
  cmd->add_option("--gamma", o.gamma, "REMC geometric ladder ratio");
  cmd->add_flag("--no-exchange", o.no_exchange, "Disable SEMC exchanges");
  cmd->add_option("--seed", o.seed, "Run seed");
  cmd->add_option("--trials", o.trials, "Independent trials with seeds seed, seed+1, ...");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = automatic)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tempered Markov chain Monte Carlo experiments"};
  app.require_subcommand(1);

  Overrides run_o;
  auto* run = app.add_subcommand("run", "Run one sampler on one problem");
  add_common_options(run, run_o);
  add_sampler_options(run, run_o);

  Overrides ref_o;
  auto* reference = app.add_subcommand("reference", "Compute the reference free energy and histograms");
  add_common_options(reference, ref_o);
  add_sampler_options(reference, ref_o);

  std::vector<std::string> compare_inputs;
  std::string compare_reference;
  std::string compare_csv;
  auto* compare = app.add_subcommand("compare", "Tabulate results against a reference");
  compare->add_option("results", compare_inputs, "Result directories")->required();
  compare->add_option("--reference", compare_reference, "Reference directory")->required();
  compare->add_option("--csv", compare_csv, "Write the table as CSV");

  Overrides data_o;
  auto* generate = app.add_subcommand("generate-data", "Write a seeded synthetic dataset");
  add_common_options(generate, data_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_o);
    if (*reference) return cmd_reference(ref_o);
    if (*compare) return cmd_compare(compare_inputs, compare_reference, compare_csv);
    if (*generate) return cmd_generate_data(data_o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
