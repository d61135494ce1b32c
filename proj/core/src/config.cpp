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

#include "radc/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace radc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("SystemConfig: ") + what);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (a + 0x632BE59BD9B4E019ULL));
  h = splitmix64(h ^ (b + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

double SystemConfig::tx_power_mw() const { return std::pow(10.0, tx_power_dbm / 10.0); }

double SystemConfig::lambda_p() const {
  return lambda_p_override ? *lambda_p_override : epsilon * static_cast<double>(n_antennas);
}

double SystemConfig::shadow_std_db() const {
  return shadow_convention == ShadowConvention::variance ? std::sqrt(shadow_sigma_db)
                                                         : shadow_sigma_db;
}

void SystemConfig::set_antennas(int antennas) {
  n_antennas = antennas;
  n_rf = std::max(1, static_cast<int>(std::lround(tau * antennas)));
}

void SystemConfig::validate() const {
  require(n_antennas > 0, "n_antennas must be positive");
  require(n_rf > 0, "n_rf must be positive");
  require(n_rf <= n_antennas, "n_rf must not exceed n_antennas");
  require(n_users > 0, "n_users must be positive");
  require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(lambda_p() >= 0.0, "lambda_p must be non-negative");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
  require(carrier_ghz > 0.0, "carrier_ghz must be positive");
  require(cell_radius_m > 0.0 && min_distance_m > 0.0, "distances must be positive");
  require(min_distance_m <= cell_radius_m, "min_distance_m must not exceed cell_radius_m");
  require(shadow_sigma_db >= 0.0, "shadow_sigma_db must be non-negative");
  require(constraint_bits >= 0, "constraint_bits must be non-negative");
  require(block_len > 0, "block_len must be positive");
  require(n_interfering_cells >= 0, "n_interfering_cells must be non-negative");
  require(std::isfinite(tx_power_dbm), "tx_power_dbm must be finite");
}

SystemConfig SystemConfig::reference(int antennas) {
  SystemConfig c;
  c.set_antennas(antennas);
  return c;
}

}  // namespace radc
