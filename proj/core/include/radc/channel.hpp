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

#ifndef RADC_CHANNEL_HPP
#define RADC_CHANNEL_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "radc/config.hpp"

namespace radc {

/// PL(d) = alpha + 10 beta log10(d) + shadow, in dB. Throws std::domain_error for d <= 0.
double pathloss_db(double distance_m, double shadow_db, double alpha_db, double beta);
double pathloss_db(const SystemConfig& config, double distance_m, double shadow_db);

/// Thermal noise -174 dBm/Hz + 10 log10(W) + noise figure.
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

/// Large-scale gain normalised by the noise power (linear), so that
/// p_u[mW] * gamma is the per-path receive SNR.
double normalized_gain(const SystemConfig& config, double distance_m, double shadow_db);

struct UserDrop {
  std::vector<double> distances_m;
  std::vector<double> gamma;
};

/// Places config.n_users users uniformly in area over the annulus
/// [min_distance_m, cell_radius_m] with one shadowing draw each.
UserDrop sample_user_drop(const SystemConfig& config, Rng& rng);

/// Users of one interfering cell: distances uniform on [R, 3R] from the
/// serving base station, same pathloss and shadowing model.
UserDrop sample_interfering_drop(const SystemConfig& config, Rng& rng);

/// Deterministic drop from given distances and shadowing values.
UserDrop make_user_drop(const SystemConfig& config, std::span<const double> distances_m,
                        std::span<const double> shadows_db);

/// max(Poisson(lambda_p), 1). Throws std::domain_error for negative lambda_p.
int sample_path_count(double lambda_p, Rng& rng);

/// Per-user sets of occupied beamspace rows (0-based, sorted).
struct PathSupport {
  int n_rf = 0;
  std::vector<std::vector<int>> rows;

  int n_users() const { return static_cast<int>(rows.size()); }
  std::vector<int> path_counts() const;
};

/// Draws L_n for every user (clamped to n_rf) and picks L_n distinct rows
/// uniformly at random, independently across users.
PathSupport sample_support(int n_rf, int n_users, double lambda_p, Rng& rng);

/// Sparse beamspace channel H_b = G * diag(gamma)^{1/2}.
struct ChannelRealization {
  std::vector<std::vector<int>> support;
  std::vector<int> path_counts;
  Eigen::MatrixXcd gains;     ///< G, n_rf x n_users, zero off-support
  std::vector<double> gamma;  ///< per-user large-scale gain (linear)

  int n_rf() const { return static_cast<int>(gains.rows()); }
  int n_users() const { return static_cast<int>(gains.cols()); }

  /// H_b = G diag(sqrt(gamma)).
  Eigen::MatrixXcd beamspace() const;
};

/// Fills the support with IID CN(0, 1) gains.
ChannelRealization sample_complex_gains(const PathSupport& support, std::span<const double> gamma,
                                        Rng& rng);

/// Support draw followed by gain draw, with lambda_p and n_rf from the config.
ChannelRealization sample_beamspace_channel(const SystemConfig& config, const UserDrop& drop,
                                            Rng& rng);

/// Builds a realization from an explicit gain matrix. The support is read off
/// the nonzero pattern. Used by tests and file-supplied channels.
ChannelRealization make_channel(const Eigen::MatrixXcd& gains, std::span<const double> gamma);

/// ||[H_b]_{i,:}||^2 = sum_k gamma_k |g_{i,k}|^2 for every row.
std::vector<double> row_gains(const ChannelRealization& channel);

/// Column-wise concatenation [own, other...]; gammas are concatenated in the
/// same order. Used for out-of-cell interference.
ChannelRealization stack_users(const ChannelRealization& own,
                               std::span<const ChannelRealization> others);

}  // namespace radc

#endif  // RADC_CHANNEL_HPP
