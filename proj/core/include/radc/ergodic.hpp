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

#ifndef RADC_ERGODIC_HPP
#define RADC_ERGODIC_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "radc/allocator.hpp"
#include "radc/config.hpp"
#include "radc/metrics.hpp"
#include "radc/power.hpp"
#include "radc/quantizer.hpp"

namespace radc {

enum class SwitchingMode {
  coherence,  ///< re-allocate on every fading realization
  slow,       ///< allocate once per block of realizations
};

/// What the slow-switching allocation is computed from.
enum class SlowInput {
  expected_gains,     ///< E||row||^2 given supports and gamma
  first_realization,  ///< row gains of the block's first realization
};

enum class RateMetric { mrc, capacity, gmi };

std::string_view to_string(SwitchingMode m);
SwitchingMode parse_switching_mode(std::string_view name);
std::string_view to_string(RateMetric m);
RateMetric parse_rate_metric(std::string_view name);

struct ErgodicOptions {
  Strategy strategy = Strategy::fixed;
  SwitchingMode switching = SwitchingMode::coherence;
  SlowInput slow_input = SlowInput::expected_gains;
  RateMetric metric = RateMetric::mrc;
  BetaModel beta_model = BetaModel::table;
  int blocks = 20;
  int trials_per_block = 0;  ///< 0 = config.block_len
  std::uint64_t seed = 1;
  int threads = 1;  ///< 0 = hardware concurrency
  /// Own-cell drop used by every block, overriding the config's drop policy.
  std::optional<UserDrop> fixed_drop;
  PowerModel power;
};

struct ErgodicResult {
  std::vector<double> per_user_rate;  ///< empty for the capacity metric
  double sum_rate = 0.0;
  double stderr_sum_rate = 0.0;  ///< standard error of the block means
  std::array<double, kMaxBits + 1> bit_histogram{};  ///< fraction of chains per bit count
  double mean_active = 0.0;
  double mean_adc_w = 0.0;        ///< mean sum_i P_ADC(b_i), one branch
  double mean_switching_w = 0.0;  ///< mean sum_i P_SW per realization, one branch
  /// Block average of the fixed-ADC closed-form sum rate at the constraint
  /// resolution (multi-cell form when interfering cells are simulated).
  double analytic_sum_rate = 0.0;
  std::int64_t total_trials = 0;
  bool within_budget = true;  ///< every allocation met the ADC power budget

  PowerReport power(int n_antennas, const PowerModel& model) const;
  RateReport report(RateMetric metric) const;
};

/// Monte Carlo ergodic rate. Each block draws the slow characteristics (user
/// drop unless fixed, interfering-cell drops, path supports) and then
/// `trials_per_block` complex-gain realizations. Block b uses the stream
/// derive_seed(seed, b), blocks may run on several threads, and results are
/// reduced in block order, so the output depends only on (config, options)
/// and not on the thread count. Switching power is charged for mmsqe and
/// revmmsqe only, including transitions across block boundaries.
/// Throws std::invalid_argument for zero blocks or trials.
ErgodicResult ergodic_rate_mc(const SystemConfig& config, const ErgodicOptions& options);

}  // namespace radc

#endif  // RADC_ERGODIC_HPP
