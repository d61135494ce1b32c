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

#ifndef RADC_HARNESS_HPP
#define RADC_HARNESS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "radc/allocator.hpp"
#include "radc/config.hpp"
#include "radc/ergodic.hpp"
#include "radc/power.hpp"

namespace radc {

enum class ExperimentId {
  table2,             ///< bit histogram of revmmsqe over the constraint bits
  capacity_vs_power,  ///< capacity per strategy over p_u
  rate_vs_power,      ///< MRC ergodic sum rate over p_u
  rate_vs_antennas,   ///< MRC ergodic sum rate over N_r
  rate_ee_vs_bits,    ///< sum rate and energy efficiency over the constraint bits
  validate_analytic,  ///< fixed-ADC Monte Carlo next to the closed form, over p_u
  power_scaling,      ///< p_u = E_s / (tau N_r) over N_r, with the large-path closed form
  multicell,          ///< fixed-ADC Monte Carlo next to the multi-cell closed form, over N_c
};

std::string_view to_string(ExperimentId id);
/// Throws std::invalid_argument for unknown ids.
ExperimentId parse_experiment_id(std::string_view name);

struct ExperimentSpec {
  ExperimentId id = ExperimentId::rate_vs_power;
  std::vector<double> sweep_values;
  std::vector<Strategy> strategies;
  int trials = 0;  ///< realizations per block; 0 = config.block_len
  int blocks = 20;
  std::uint64_t seed = 1;
  std::string output_path;
  SwitchingMode switching = SwitchingMode::coherence;
  SlowInput slow_input = SlowInput::expected_gains;
  int threads = 1;

  /// Sweep axis name written to the CSV: pu_dbm, n_antennas, constraint_bits
  /// or n_cells.
  std::string sweep_name() const;

  /// Default sweep and strategy list for an experiment.
  static ExperimentSpec defaults(ExperimentId id);

  /// Overlays [experiment] keys (id, sweep_values, strategies, trials, blocks,
  /// seed, out, switching, slow_input, threads) on the defaults of the id.
  /// Unknown keys throw std::invalid_argument.
  static ExperimentSpec from_keys(const std::map<std::string, std::string>& keys);

  /// Throws std::invalid_argument unless the sweep is strictly increasing,
  /// non-empty, and trials * blocks >= 1.
  void validate() const;
};

/// One CSV line.
struct ResultRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string strategy;  ///< strategy name, or analytic / infinite for reference rows
  double sum_rate = 0.0;
  std::vector<double> per_user_rates;
  double p_tot_w = 0.0;
  double energy_eff = 0.0;
  double n_act_mean = 0.0;
  std::array<double, kMaxBits + 1> alloc_histogram{};
  double stderr_sum_rate = 0.0;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
};

/// Runs every (sweep value, strategy) point. Point i uses the master seed
/// derive_seed(spec.seed, i) for every strategy, so strategies see the same
/// channels. Reference rows (closed forms, the 12-bit benchmark) follow the
/// strategy rows of each point. Throws std::logic_error if an emitted
/// allocation row breaks the ADC power budget.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const SystemConfig& config,
                                      const PowerModel& power = {});

inline constexpr std::string_view kCsvHeader =
    "sweep_name,sweep_value,strategy,sum_rate,per_user_rates,p_tot_w,energy_eff,n_act_mean,"
    "alloc_histogram,stderr_sum_rate,seed,trials";

/// Header plus one line per row; reals at 9 significant digits, list columns
/// joined with ';'.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// %.9g formatting used by the CSV writer.
std::string format_real(double v);

}  // namespace radc

#endif  // RADC_HARNESS_HPP
