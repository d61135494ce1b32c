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

#include "radc/power.hpp"

#include <cmath>
#include <stdexcept>

namespace radc {

void PowerModel::validate() const {
  if (c_conv < 0 || f_s < 0 || p_lna < 0 || p_ps < 0 || p_rfchain < 0 || p_bb < 0 ||
      c_sw_up < 0 || c_sw_down < 0)
    throw std::invalid_argument("PowerModel: constants must be non-negative");
  if (b_infinity < 1) throw std::invalid_argument("PowerModel: b_infinity must be >= 1");
}

double adc_power(int bits, const PowerModel& model) {
  if (bits <= 0) return 0.0;
  return model.c_conv * model.f_s * std::ldexp(1.0, bits);
}

namespace {

double steps(int bits, const PowerModel& model) {
  if (bits < 0) bits = 0;
  if (bits == 0 && !model.zero_bit_as_one_step) return 0.0;
  return std::ldexp(1.0, bits);
}

}  // namespace

double switching_power(int b_new, int b_prev, const PowerModel& model) {
  const double now = steps(b_new, model);
  const double before = steps(b_prev, model);
  if (now > before) return model.c_sw_up * (now - before);
  if (now < before) return model.c_sw_down * (before - now);
  return 0.0;
}

PowerReport receiver_power(int n_antennas, std::span<const int> bits,
                           std::optional<std::span<const int>> prev_bits,
                           const PowerModel& model) {
  if (n_antennas <= 0) throw std::invalid_argument("receiver_power: n_antennas must be positive");
  if (prev_bits && prev_bits->size() != bits.size())
    throw std::invalid_argument("receiver_power: bits and prev_bits differ in length");

  int active = 0;
  double adc = 0.0;
  double sw = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 0) ++active;
    adc += adc_power(bits[i], model);
    if (prev_bits) sw += switching_power(bits[i], (*prev_bits)[i], model);
  }
  return receiver_power_from_means(n_antennas, active, adc, sw, model);
}

PowerReport receiver_power_from_means(int n_antennas, double mean_active, double mean_adc_w,
                                      double mean_switching_w, const PowerModel& model) {
  PowerReport r;
  r.lna = n_antennas * model.p_lna;
  r.phase_shifters = mean_active * n_antennas * model.p_ps;
  r.rf_chains = mean_active * model.p_rfchain;
  r.adc = 2.0 * mean_adc_w;
  r.switching = 2.0 * mean_switching_w;
  r.baseband = model.p_bb;
  r.total = r.lna + r.phase_shifters + r.rf_chains + r.adc + r.switching + r.baseband;
  r.active_chains = static_cast<int>(std::lround(mean_active));
  return r;
}

double energy_efficiency(double sum_rate_bps_hz, double bandwidth_hz, double p_tot_w) {
  if (!(p_tot_w > 0.0)) throw std::domain_error("energy_efficiency: total power must be positive");
  return sum_rate_bps_hz * bandwidth_hz / p_tot_w;
}

}  // namespace radc
