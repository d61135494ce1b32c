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

#include "radc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace radc {

double pathloss_db(double distance_m, double shadow_db, double alpha_db, double beta) {
  if (!(distance_m > 0.0)) throw std::domain_error("pathloss_db: distance must be positive");
  return alpha_db + 10.0 * beta * std::log10(distance_m) + shadow_db;
}

double pathloss_db(const SystemConfig& config, double distance_m, double shadow_db) {
  return pathloss_db(distance_m, shadow_db, config.pathloss_alpha_db, config.pathloss_beta);
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw std::domain_error("noise_power_dbm: bandwidth must be positive");
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double normalized_gain(const SystemConfig& config, double distance_m, double shadow_db) {
  const double gamma_db = -(pathloss_db(config, distance_m, shadow_db) +
                            noise_power_dbm(config.bandwidth_hz, config.noise_figure_db));
  return std::pow(10.0, gamma_db / 10.0);
}

UserDrop sample_user_drop(const SystemConfig& config, Rng& rng) {
  config.validate();
  const double r2 = config.min_distance_m * config.min_distance_m;
  const double big_r2 = config.cell_radius_m * config.cell_radius_m;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shadow(0.0, config.shadow_std_db());

  UserDrop drop;
  drop.distances_m.reserve(config.n_users);
  drop.gamma.reserve(config.n_users);
  for (int n = 0; n < config.n_users; ++n) {
    // Uniform in area: the squared radius is uniform on [r^2, R^2].
    double d = std::sqrt(r2 + unit(rng) * (big_r2 - r2));
    d = std::clamp(d, config.min_distance_m, config.cell_radius_m);
    const double chi = config.shadow_std_db() > 0.0 ? shadow(rng) : 0.0;
    drop.distances_m.push_back(d);
    drop.gamma.push_back(normalized_gain(config, d, chi));
  }
  return drop;
}

UserDrop sample_interfering_drop(const SystemConfig& config, Rng& rng) {
  config.validate();
  std::uniform_real_distribution<double> dist(config.cell_radius_m, 3.0 * config.cell_radius_m);
  std::normal_distribution<double> shadow(0.0, config.shadow_std_db());
  UserDrop drop;
  for (int n = 0; n < config.n_users; ++n) {
    const double d = dist(rng);
    const double chi = config.shadow_std_db() > 0.0 ? shadow(rng) : 0.0;
    drop.distances_m.push_back(d);
    drop.gamma.push_back(normalized_gain(config, d, chi));
  }
  return drop;
}

UserDrop make_user_drop(const SystemConfig& config, std::span<const double> distances_m,
                        std::span<const double> shadows_db) {
  if (distances_m.size() != shadows_db.size())
    throw std::invalid_argument("make_user_drop: distances and shadows differ in length");
  UserDrop drop;
  for (std::size_t n = 0; n < distances_m.size(); ++n) {
    drop.distances_m.push_back(distances_m[n]);
    drop.gamma.push_back(normalized_gain(config, distances_m[n], shadows_db[n]));
  }
  return drop;
}

int sample_path_count(double lambda_p, Rng& rng) {
  if (!(lambda_p >= 0.0)) throw std::domain_error("sample_path_count: lambda_p must be >= 0");
  if (lambda_p == 0.0) return 1;
  std::poisson_distribution<int> poisson(lambda_p);
  return std::max(poisson(rng), 1);
}

std::vector<int> PathSupport::path_counts() const {
  std::vector<int> counts;
  counts.reserve(rows.size());
  for (const auto& r : rows) counts.push_back(static_cast<int>(r.size()));
  return counts;
}

PathSupport sample_support(int n_rf, int n_users, double lambda_p, Rng& rng) {
  if (n_rf <= 0 || n_users <= 0) throw std::invalid_argument("sample_support: empty dimensions");
  PathSupport support;
  support.n_rf = n_rf;
  support.rows.resize(n_users);

  std::vector<int> pool(n_rf);
  for (int n = 0; n < n_users; ++n) {
    const int paths = std::min(sample_path_count(lambda_p, rng), n_rf);
    // Partial Fisher-Yates: the first `paths` entries are a uniform draw
    // without replacement.
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < paths; ++k) {
      std::uniform_int_distribution<int> pick(k, n_rf - 1);
      std::swap(pool[k], pool[pick(rng)]);
    }
    auto& rows = support.rows[n];
    rows.assign(pool.begin(), pool.begin() + paths);
    std::sort(rows.begin(), rows.end());
  }
  return support;
}

Eigen::MatrixXcd ChannelRealization::beamspace() const {
  Eigen::MatrixXcd h = gains;
  for (int k = 0; k < n_users(); ++k) h.col(k) *= std::sqrt(gamma[k]);
  return h;
}

ChannelRealization sample_complex_gains(const PathSupport& support, std::span<const double> gamma,
                                        Rng& rng) {
  if (static_cast<int>(gamma.size()) != support.n_users())
    throw std::invalid_argument("sample_complex_gains: gamma length differs from user count");
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));

  ChannelRealization ch;
  ch.support = support.rows;
  ch.path_counts = support.path_counts();
  ch.gamma.assign(gamma.begin(), gamma.end());
  ch.gains = Eigen::MatrixXcd::Zero(support.n_rf, support.n_users());
  for (int k = 0; k < support.n_users(); ++k) {
    for (int i : support.rows[k]) {
      const double re = half(rng);
      const double im = half(rng);
      ch.gains(i, k) = {re, im};
    }
  }
  return ch;
}

ChannelRealization sample_beamspace_channel(const SystemConfig& config, const UserDrop& drop,
                                            Rng& rng) {
  if (static_cast<int>(drop.gamma.size()) != config.n_users)
    throw std::invalid_argument("sample_beamspace_channel: drop size differs from n_users");
  const PathSupport support = sample_support(config.n_rf, config.n_users, config.lambda_p(), rng);
  return sample_complex_gains(support, drop.gamma, rng);
}

ChannelRealization make_channel(const Eigen::MatrixXcd& gains, std::span<const double> gamma) {
  if (static_cast<Eigen::Index>(gamma.size()) != gains.cols())
    throw std::invalid_argument("make_channel: gamma length differs from column count");
  ChannelRealization ch;
  ch.gains = gains;
  ch.gamma.assign(gamma.begin(), gamma.end());
  ch.support.resize(gains.cols());
  for (Eigen::Index k = 0; k < gains.cols(); ++k) {
    for (Eigen::Index i = 0; i < gains.rows(); ++i)
      if (gains(i, k) != std::complex<double>(0.0, 0.0))
        ch.support[k].push_back(static_cast<int>(i));
    ch.path_counts.push_back(static_cast<int>(ch.support[k].size()));
  }
  return ch;
}

std::vector<double> row_gains(const ChannelRealization& channel) {
  std::vector<double> out(channel.n_rf(), 0.0);
  for (int k = 0; k < channel.n_users(); ++k) {
    const double g = channel.gamma[k];
    for (int i : channel.support[k]) out[i] += g * std::norm(channel.gains(i, k));
  }
  return out;
}

ChannelRealization stack_users(const ChannelRealization& own,
                               std::span<const ChannelRealization> others) {
  Eigen::Index cols = own.gains.cols();
  for (const auto& o : others) {
    if (o.n_rf() != own.n_rf()) throw std::invalid_argument("stack_users: row count mismatch");
    cols += o.gains.cols();
  }
  ChannelRealization out = own;
  out.gains.resize(own.n_rf(), cols);
  out.gains.leftCols(own.gains.cols()) = own.gains;
  Eigen::Index at = own.gains.cols();
  for (const auto& o : others) {
    out.gains.middleCols(at, o.gains.cols()) = o.gains;
    at += o.gains.cols();
    out.support.insert(out.support.end(), o.support.begin(), o.support.end());
    out.path_counts.insert(out.path_counts.end(), o.path_counts.begin(), o.path_counts.end());
    out.gamma.insert(out.gamma.end(), o.gamma.begin(), o.gamma.end());
  }
  return out;
}

}  // namespace radc
