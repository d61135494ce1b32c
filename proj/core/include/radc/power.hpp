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

#ifndef RADC_POWER_HPP
#define RADC_POWER_HPP

#include <optional>
#include <span>

namespace radc {

/// Component power constants, in W unless noted.
struct PowerModel {
  double c_conv = 494e-15;   ///< J per conversion step
  double f_s = 1e9;          ///< Hz
  double p_lna = 0.020;
  double p_ps = 0.010;
  double p_rfchain = 0.040;
  double p_bb = 0.200;
  double c_sw_up = 3.47e-3;    ///< W per conversion step gained
  double c_sw_down = 0.94e-3;  ///< W per conversion step dropped
  int b_infinity = 12;

  /// When true a 0-bit chain counts as 2^0 = 1 step in the switching term;
  /// when false it counts as 0 steps.
  bool zero_bit_as_one_step = true;

  /// Throws std::invalid_argument if any constant is negative.
  void validate() const;
};

/// c f_s 2^b, 0 for b <= 0.
double adc_power(int bits, const PowerModel& model = {});

/// c_up (2^new - 2^prev) when increasing, c_down (2^prev - 2^new) when
/// decreasing, 0 when unchanged.
double switching_power(int b_new, int b_prev, const PowerModel& model = {});

struct PowerReport {
  double lna = 0.0;
  double phase_shifters = 0.0;
  double rf_chains = 0.0;
  double adc = 0.0;        ///< includes the factor 2 for I/Q
  double switching = 0.0;  ///< includes the factor 2 for I/Q
  double baseband = 0.0;
  double total = 0.0;
  int active_chains = 0;
};

/// N_r P_LNA + N_act (N_r P_PS + P_RF) + 2 sum_i (P_ADC(b_i) + P_SW(b_i; b_i^p)) + P_BB.
/// Switching is charged only when `prev_bits` is given. Throws
/// std::invalid_argument on length mismatch or non-positive n_antennas.
PowerReport receiver_power(int n_antennas, std::span<const int> bits,
                           std::optional<std::span<const int>> prev_bits = std::nullopt,
                           const PowerModel& model = {});

/// Same composition from block averages: mean active chains, mean per-chain
/// sum of P_ADC and mean sum of P_SW (both per I or Q branch).
PowerReport receiver_power_from_means(int n_antennas, double mean_active, double mean_adc_w,
                                      double mean_switching_w, const PowerModel& model = {});

/// R W / P_tot in bits/J. Throws std::domain_error for p_tot_w <= 0.
double energy_efficiency(double sum_rate_bps_hz, double bandwidth_hz, double p_tot_w);

}  // namespace radc

#endif  // RADC_POWER_HPP
