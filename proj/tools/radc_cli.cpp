// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// radc: command line front end.
//
//   radc allocate [--strategy S] [--bits B] [--gains FILE] ...
//   radc capacity | rate [--strategy S] [--trials T] [--blocks K] ...
//   radc sweep --experiment ID ...
//   radc validate [--nr N] [--bits B] ...
//
// Exit status: 0 success, 2 command line error, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radc/allocator.hpp"
#include "radc/channel.hpp"
#include "radc/config_file.hpp"
#include "radc/ergodic.hpp"
#include "radc/harness.hpp"
#include "radc/metrics.hpp"
#include "radc/power.hpp"

namespace {

using namespace radc;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<double> pu_dbm;
  std::optional<int> nr;
  std::optional<int> bits;
  std::optional<std::string> strategy;
  std::optional<int> trials;
  std::optional<int> blocks;
  std::optional<int> cells;
  std::optional<int> threads;
};

struct Setup {
  SystemConfig system;
  PowerModel power;
  ExperimentSpec spec;
};

Setup build_setup(const Common& c, std::optional<ExperimentId> forced = std::nullopt) {
  ConfigFile file;
  if (!c.config_path.empty()) file = load_config(c.config_path);
  Setup s{file.system, file.power, ExperimentSpec::from_keys(file.experiment)};
  if (forced && s.spec.id != *forced) {
    auto keys = file.experiment;
    keys["id"] = std::string(to_string(*forced));
    keys.erase("sweep_values");
    keys.erase("strategies");
    s.spec = ExperimentSpec::from_keys(keys);
  }
  if (c.nr) s.system.set_antennas(*c.nr);
  if (c.pu_dbm) s.system.tx_power_dbm = *c.pu_dbm;
  if (c.bits) s.system.constraint_bits = *c.bits;
  if (c.cells) s.system.n_interfering_cells = *c.cells;
  if (c.seed) s.spec.seed = *c.seed;
  if (c.trials) s.spec.trials = *c.trials;
  if (c.blocks) s.spec.blocks = *c.blocks;
  if (c.threads) s.spec.threads = *c.threads;
  if (c.strategy) s.spec.strategies = {parse_strategy(*c.strategy)};
  if (!c.out.empty()) s.spec.output_path = c.out;
  s.system.validate();
  return s;
}

// Writes to the --out path when given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
}

std::vector<double> read_gains(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open gains file '" + path + "'");
  // Whitespace-separated values; '#' starts a comment.
  std::vector<double> g;
  for (std::string line; std::getline(f, line);) {
    std::istringstream in(line.substr(0, line.find('#')));
    double v;
    while (in >> v) g.push_back(v);
    if (!in.eof()) throw std::runtime_error("gains file '" + path + "' holds a non-numeric entry");
  }
  if (g.empty()) throw std::runtime_error("gains file '" + path + "' is empty");
  return g;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_real(v[i]);
  return s;
}

int cmd_allocate(const Common& c, const std::string& gains_path) {
  const Setup s = build_setup(c);
  const Strategy strategy = c.strategy ? parse_strategy(*c.strategy) : Strategy::revmmsqe;
  const double p = s.system.tx_power_mw();

  std::vector<double> gains;
  if (!gains_path.empty()) {
    gains = read_gains(gains_path);
  } else {
    Rng rng(derive_seed(s.spec.seed, 0));
    const auto drop = sample_user_drop(s.system, rng);
    gains = row_gains(sample_beamspace_channel(s.system, drop, rng));
  }
  const auto a = allocate_from_gains(gains, p, s.system.constraint_bits, strategy);

  std::ostringstream o;
  o << "strategy " << to_string(strategy) << "\n";
  o << "constraint_bits " << s.system.constraint_bits << "\n";
  o << "n_rf " << a.n_rf() << "\n";
  o << "row_gains " << join(gains) << "\n";
  if (!a.real_bits.empty()) o << "real_bits " << join(a.real_bits) << "\n";
  o << "bits";
  for (int b : a.integer_bits) o << ' ' << b;
  o << "\nactive " << a.active_count << "\n";
  o << "adc_units " << a.adc_power_units() << " budget " << a.adc_budget_units() << " "
    << (a.within_budget() ? "ok" : "VIOLATED") << "\n";
  emit(c.out, o.str());
  return a.within_budget() ? 0 : 1;
}

int cmd_ergodic(const Common& c, RateMetric metric) {
  const Setup s = build_setup(c);
  ErgodicOptions opt;
  opt.strategy = c.strategy ? parse_strategy(*c.strategy) : Strategy::fixed;
  opt.metric = metric;
  opt.blocks = s.spec.blocks;
  opt.trials_per_block = s.spec.trials;
  opt.seed = s.spec.seed;
  opt.threads = s.spec.threads;
  opt.switching = s.spec.switching;
  opt.slow_input = s.spec.slow_input;
  opt.power = s.power;
  const auto r = ergodic_rate_mc(s.system, opt);
  const auto report = r.report(metric);
  const auto pw = r.power(s.system.n_antennas, s.power);

  std::ostringstream o;
  o << "kind " << to_string(report.kind) << "\n";
  o << "strategy " << to_string(opt.strategy) << "\n";
  o << "sum_rate " << format_real(report.sum_rate) << "\n";
  o << "stderr_sum_rate " << format_real(r.stderr_sum_rate) << "\n";
  if (!report.per_user_rate.empty()) o << "per_user_rate " << join(report.per_user_rate) << "\n";
  if (metric == RateMetric::mrc) o << "analytic_sum_rate " << format_real(r.analytic_sum_rate) << "\n";
  o << "p_tot_w " << format_real(pw.total) << "\n";
  o << "energy_eff " << format_real(energy_efficiency(report.sum_rate, s.system.bandwidth_hz, pw.total))
    << "\n";
  o << "trials " << r.total_trials << "\n";
  emit(c.out, o.str());
  return 0;
}

int cmd_sweep(const Common& c, const std::optional<std::string>& experiment,
              std::optional<ExperimentId> forced) {
  if (experiment) forced = parse_experiment_id(*experiment);
  const Setup s = build_setup(c, forced);
  const auto rows = run_experiment(s.spec, s.system, s.power);
  std::ostringstream o;
  write_csv(o, rows);
  emit(s.spec.output_path, o.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution-adaptive ADC receiver model"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--config", c.config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", c.seed, "Master seed");
  app.add_option("--out", c.out, "Output file (stdout when omitted)");
  app.add_option("--pu-dbm", c.pu_dbm, "Transmit power per user in dBm");
  app.add_option("--nr", c.nr, "Number of BS antennas (N_RF follows tau)")->check(CLI::PositiveNumber);
  app.add_option("--bits", c.bits, "Constraint bits")->check(CLI::Range(0, kMaxBits));
  app.add_option("--strategy", c.strategy, "fixed | mmsqe | revmmsqe | mixed")
      ->check(CLI::IsMember({"fixed", "mmsqe", "revmmsqe", "mixed"}));
  app.add_option("--trials", c.trials, "Realizations per block")->check(CLI::PositiveNumber);
  app.add_option("--blocks", c.blocks, "Slow-fading blocks")->check(CLI::PositiveNumber);
  app.add_option("--cells", c.cells, "Interfering cells")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", c.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  std::string gains_path;
  auto* allocate = app.add_subcommand("allocate", "Allocate bits for one sampled or given channel");
  allocate->add_option("--gains", gains_path, "File with whitespace-separated row gains")
      ->check(CLI::ExistingFile);
  auto* capacity = app.add_subcommand("capacity", "Average capacity with bit allocation");
  auto* rate = app.add_subcommand("rate", "Ergodic MRC rate with bit allocation");

  std::optional<std::string> experiment;
  std::vector<std::string> ids;
  for (auto id : {ExperimentId::table2, ExperimentId::capacity_vs_power, ExperimentId::rate_vs_power,
                  ExperimentId::rate_vs_antennas, ExperimentId::rate_ee_vs_bits,
                  ExperimentId::validate_analytic, ExperimentId::power_scaling,
                  ExperimentId::multicell})
    ids.emplace_back(to_string(id));
  auto* sweep = app.add_subcommand("sweep", "Run an experiment and write CSV");
  sweep->add_option("--experiment", experiment, "Experiment id")->check(CLI::IsMember(ids));
  auto* validate = app.add_subcommand("validate", "Monte Carlo against the closed-form rate, as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*allocate) return cmd_allocate(c, gains_path);
    if (*capacity) return cmd_ergodic(c, RateMetric::capacity);
    if (*rate) return cmd_ergodic(c, RateMetric::mrc);
    if (*sweep) return cmd_sweep(c, experiment, std::nullopt);
    if (*validate) return cmd_sweep(c, std::nullopt, ExperimentId::validate_analytic);
  } catch (const std::exception& e) {
    std::cerr << "radc: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
