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

#ifndef RADC_CONFIG_HPP
#define RADC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <random>

namespace radc {

using Rng = std::mt19937_64;

/// Mixes a master seed with up to two stream indices (splitmix64 finalizer).
/// Every Monte Carlo stream in the library is seeded through this so results
/// depend on (seed, point, block) only, never on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// How the shadowing figure in the config is read.
enum class ShadowConvention {
  std_dev,   ///< shadow_sigma_db is the standard deviation of the dB Gaussian
  variance,  ///< shadow_sigma_db is the variance (std = sqrt)
};

/// Scenario parameters for a single-cell hybrid receiver.
///
/// Powers are in dBm, distances in metres, gains in dB unless the name says
/// otherwise. `n_rf` and the path density are derived from `n_antennas` via
/// `tau` and `epsilon` by set_antennas(); both can also be set directly.
struct SystemConfig {
  int n_antennas = 64;
  int n_rf = 32;
  int n_users = 8;
  double tau = 0.5;
  double epsilon = 0.1;
  std::optional<double> lambda_p_override;

  double tx_power_dbm = 20.0;
  double bandwidth_hz = 1e9;
  double noise_figure_db = 5.0;
  double carrier_ghz = 28.0;

  double cell_radius_m = 200.0;
  double min_distance_m = 30.0;
  double pathloss_alpha_db = 72.0;
  double pathloss_beta = 2.92;
  double shadow_sigma_db = 8.7;
  ShadowConvention shadow_convention = ShadowConvention::std_dev;

  int constraint_bits = 1;
  int block_len = 100;

  /// Draw new user positions for every slow-fading block. When false one drop
  /// is made per experiment point and reused by every block.
  bool resample_drop_per_block = true;

  /// Number of interfering cells for multi-cell runs (0 = single cell).
  int n_interfering_cells = 0;

  /// Linear transmit power in mW. Recomputed from tx_power_dbm on every call.
  double tx_power_mw() const;

  /// Near-average number of paths: the override if set, else epsilon * n_antennas.
  double lambda_p() const;

  /// Standard deviation of the dB shadowing draw under the selected convention.
  double shadow_std_db() const;

  /// Sets n_antennas and re-derives n_rf = round(tau * n_antennas) (at least 1).
  void set_antennas(int antennas);

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  /// Simulation environment of the reference study: 8 users in a 200 m cell
  /// at 28 GHz, 1 GHz bandwidth, tau = 0.5, epsilon = 0.1.
  static SystemConfig reference(int antennas = 256);
};

}  // namespace radc

#endif  // RADC_CONFIG_HPP
