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

#include "radc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace radc {

namespace {

constexpr ExperimentId kAllIds[] = {
    ExperimentId::table2,           ExperimentId::capacity_vs_power, ExperimentId::rate_vs_power,
    ExperimentId::rate_vs_antennas, ExperimentId::rate_ee_vs_bits,   ExperimentId::validate_analytic,
    ExperimentId::power_scaling,    ExperimentId::multicell,
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (!in || !(in >> std::ws).eof())
    throw std::invalid_argument("experiment: bad value for '" + key + "': '" + text + "'");
  return v;
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::table2: return "table2";
    case ExperimentId::capacity_vs_power: return "capacity_vs_power";
    case ExperimentId::rate_vs_power: return "rate_vs_power";
    case ExperimentId::rate_vs_antennas: return "rate_vs_antennas";
    case ExperimentId::rate_ee_vs_bits: return "rate_ee_vs_bits";
    case ExperimentId::validate_analytic: return "validate_analytic";
    case ExperimentId::power_scaling: return "power_scaling";
    case ExperimentId::multicell: return "multicell";
  }
  return "unknown";
}

ExperimentId parse_experiment_id(std::string_view name) {
  for (auto id : kAllIds)
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unknown experiment id '" + std::string(name) + "'");
}

std::string ExperimentSpec::sweep_name() const {
  switch (id) {
    case ExperimentId::table2:
    case ExperimentId::rate_ee_vs_bits: return "constraint_bits";
    case ExperimentId::rate_vs_antennas:
    case ExperimentId::power_scaling: return "n_antennas";
    case ExperimentId::multicell: return "n_cells";
    default: return "pu_dbm";
  }
}

ExperimentSpec ExperimentSpec::defaults(ExperimentId id) {
  using S = Strategy;
  ExperimentSpec s;
  s.id = id;
  const std::vector<Strategy> all{S::fixed, S::mmsqe, S::revmmsqe, S::mixed};
  switch (id) {
    case ExperimentId::table2:
      s.sweep_values = {1, 2, 3};
      s.strategies = {S::revmmsqe};
      break;
    case ExperimentId::capacity_vs_power:
    case ExperimentId::rate_vs_power:
      s.sweep_values = {-20, -10, 0, 10, 20, 30};
      s.strategies = all;
      break;
    case ExperimentId::rate_vs_antennas:
      s.sweep_values = {64, 128, 256};
      s.strategies = all;
      break;
    case ExperimentId::rate_ee_vs_bits:
      s.sweep_values = {1, 2, 3, 4, 5};
      s.strategies = all;
      break;
    case ExperimentId::validate_analytic:
      s.sweep_values = {-20, -10, 0, 10, 20};
      s.strategies = {S::fixed};
      break;
    case ExperimentId::power_scaling:
      s.sweep_values = {64, 128, 256, 512};
      s.strategies = {S::fixed};
      break;
    case ExperimentId::multicell:
      s.sweep_values = {0, 1, 2};
      s.strategies = {S::fixed};
      break;
  }
  return s;
}

ExperimentSpec ExperimentSpec::from_keys(const std::map<std::string, std::string>& keys) {
  const auto id_it = keys.find("id");
  ExperimentSpec s = defaults(id_it == keys.end() ? ExperimentId::rate_vs_power
                                                  : parse_experiment_id(id_it->second));
  for (const auto& [key, value] : keys) {
    if (key == "id") continue;
    if (key == "sweep_values") {
      s.sweep_values.clear();
      for (const auto& v : split(value, ',')) s.sweep_values.push_back(parse_number<double>(key, v));
    } else if (key == "strategies") {
      s.strategies.clear();
      for (const auto& v : split(value, ',')) s.strategies.push_back(parse_strategy(v));
    } else if (key == "trials") {
      s.trials = parse_number<int>(key, value);
    } else if (key == "blocks") {
      s.blocks = parse_number<int>(key, value);
    } else if (key == "seed") {
      s.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "out") {
      s.output_path = value;
    } else if (key == "switching") {
      s.switching = parse_switching_mode(value);
    } else if (key == "slow_input") {
      if (value == "expected_gains") s.slow_input = SlowInput::expected_gains;
      else if (value == "first_realization") s.slow_input = SlowInput::first_realization;
      else throw std::invalid_argument("experiment: bad value for 'slow_input'");
    } else if (key == "threads") {
      s.threads = parse_number<int>(key, value);
    } else {
      throw std::invalid_argument("config: unknown key 'experiment." + key + "'");
    }
  }
  return s;
}

void ExperimentSpec::validate() const {
  if (sweep_values.empty()) throw std::invalid_argument("ExperimentSpec: empty sweep");
  for (std::size_t i = 1; i < sweep_values.size(); ++i)
    if (!(sweep_values[i] > sweep_values[i - 1]))
      throw std::invalid_argument("ExperimentSpec: sweep values must be strictly increasing");
  if (strategies.empty()) throw std::invalid_argument("ExperimentSpec: no strategies");
  if (blocks < 1 || trials < 0) throw std::invalid_argument("ExperimentSpec: trials * blocks < 1");
  if (threads < 0) throw std::invalid_argument("ExperimentSpec: negative thread count");
}

namespace {

SystemConfig point_config(const ExperimentSpec& spec, const SystemConfig& base, double v) {
  SystemConfig c = base;
  switch (spec.id) {
    case ExperimentId::table2:
    case ExperimentId::rate_ee_vs_bits:
      c.constraint_bits = static_cast<int>(std::lround(v));
      break;
    case ExperimentId::rate_vs_antennas:
      c.set_antennas(static_cast<int>(std::lround(v)));
      break;
    case ExperimentId::power_scaling: {
      // The configured transmit power is read as E_s and split over the RF chains.
      c.set_antennas(static_cast<int>(std::lround(v)));
      c.tx_power_dbm = base.tx_power_dbm - 10.0 * std::log10(static_cast<double>(c.n_rf));
      break;
    }
    case ExperimentId::multicell:
      c.n_interfering_cells = static_cast<int>(std::lround(v));
      break;
    default:
      c.tx_power_dbm = v;
      break;
  }
  c.validate();
  return c;
}

ResultRow row_from(const ExperimentSpec& spec, double v, std::string label,
                   const ErgodicResult& r, const SystemConfig& c, const PowerModel& power) {
  ResultRow row;
  row.sweep_name = spec.sweep_name();
  row.sweep_value = v;
  row.strategy = std::move(label);
  row.sum_rate = r.sum_rate;
  row.per_user_rates = r.per_user_rate;
  row.p_tot_w = r.power(c.n_antennas, power).total;
  row.energy_eff = energy_efficiency(r.sum_rate, c.bandwidth_hz, row.p_tot_w);
  row.n_act_mean = r.mean_active;
  row.alloc_histogram = r.bit_histogram;
  row.stderr_sum_rate = r.stderr_sum_rate;
  row.seed = spec.seed;
  row.trials = r.total_trials;
  return row;
}

ResultRow analytic_row(const ExperimentSpec& spec, double v, const ErgodicResult& r,
                       const SystemConfig& c, const PowerModel& power) {
  ResultRow row;
  row.sweep_name = spec.sweep_name();
  row.sweep_value = v;
  row.strategy = "analytic";
  row.sum_rate = r.analytic_sum_rate;
  const std::vector<int> bits(c.n_rf, c.constraint_bits);
  row.p_tot_w = receiver_power(c.n_antennas, bits, std::nullopt, power).total;
  row.energy_eff = energy_efficiency(row.sum_rate, c.bandwidth_hz, row.p_tot_w);
  row.n_act_mean = c.constraint_bits > 0 ? c.n_rf : 0;
  row.alloc_histogram[std::clamp(c.constraint_bits, 0, kMaxBits)] = 1.0;
  row.seed = spec.seed;
  row.trials = r.total_trials;
  return row;
}

void check_budget(const ResultRow& row, const ErgodicResult& r, const SystemConfig& c) {
  // Both the per-allocation flag and the histogram mean must respect the budget.
  double mean_units = 0.0;
  for (int b = 1; b <= kMaxBits; ++b) mean_units += row.alloc_histogram[b] * std::ldexp(1.0, b);
  const double budget = std::ldexp(1.0, c.constraint_bits);
  if (!r.within_budget || mean_units > budget * (1.0 + 1e-12))
    throw std::logic_error("run_experiment: allocation row for '" + row.strategy +
                           "' exceeds the ADC power budget");
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const SystemConfig& config,
                                      const PowerModel& power) {
  spec.validate();
  config.validate();
  power.validate();

  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < spec.sweep_values.size(); ++i) {
    const double v = spec.sweep_values[i];
    const SystemConfig c = point_config(spec, config, v);

    ErgodicOptions opt;
    opt.metric = spec.id == ExperimentId::capacity_vs_power ? RateMetric::capacity : RateMetric::mrc;
    opt.blocks = spec.blocks;
    opt.trials_per_block = spec.trials;
    opt.seed = derive_seed(spec.seed, i);
    opt.threads = spec.threads;
    opt.switching = spec.switching;
    opt.slow_input = spec.slow_input;
    opt.power = power;

    std::optional<ErgodicResult> first;
    for (Strategy s : spec.strategies) {
      opt.strategy = s;
      const ErgodicResult r = ergodic_rate_mc(c, opt);
      ResultRow row = row_from(spec, v, std::string(to_string(s)), r, c, power);
      check_budget(row, r, c);
      rows.push_back(std::move(row));
      if (!first) first = r;
    }

    const bool with_analytic = spec.id == ExperimentId::validate_analytic ||
                               spec.id == ExperimentId::multicell ||
                               spec.id == ExperimentId::power_scaling;
    if (with_analytic) rows.push_back(analytic_row(spec, v, *first, c, power));

    if (spec.id == ExperimentId::rate_ee_vs_bits) {
      SystemConfig ideal = c;
      ideal.constraint_bits = power.b_infinity;
      opt.strategy = Strategy::fixed;
      const ErgodicResult r = ergodic_rate_mc(ideal, opt);
      rows.push_back(row_from(spec, v, "infinite", r, ideal, power));
    }
  }
  return rows;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.sweep_name << ',' << format_real(r.sweep_value) << ',' << r.strategy << ','
        << format_real(r.sum_rate) << ',';
    for (std::size_t n = 0; n < r.per_user_rates.size(); ++n)
      out << (n ? ";" : "") << format_real(r.per_user_rates[n]);
    out << ',' << format_real(r.p_tot_w) << ',' << format_real(r.energy_eff) << ','
        << format_real(r.n_act_mean) << ',';
    for (int b = 0; b <= kMaxBits; ++b) out << (b ? ";" : "") << format_real(r.alloc_histogram[b]);
    out << ',' << format_real(r.stderr_sum_rate) << ',' << r.seed << ',' << r.trials << '\n';
  }
}

}  // namespace radc
