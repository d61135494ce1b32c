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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "radc/channel.hpp"

using namespace radc;

TEST_CASE("pathloss and noise floor") {
  CHECK(pathloss_db(30.0, 0.0, 72.0, 2.92) == doctest::Approx(72.0 + 29.2 * std::log10(30.0)));
  CHECK(std::abs(pathloss_db(30.0, 0.0, 72.0, 2.92) - 115.13) < 0.005);
  CHECK(pathloss_db(1.0, 0.0, 72.0, 2.92) == doctest::Approx(72.0));
  CHECK(pathloss_db(200.0, -3.0, 72.0, 2.92) == doctest::Approx(72.0 + 29.2 * std::log10(200.0) - 3.0));
  CHECK_THROWS_AS(pathloss_db(0.0, 0.0, 72.0, 2.92), std::domain_error);

  CHECK(noise_power_dbm(1e9, 5.0) == doctest::Approx(-79.0));
  CHECK(noise_power_dbm(1.0, 0.0) == doctest::Approx(-174.0));
  CHECK(noise_power_dbm(1e6, 5.0) == doctest::Approx(-109.0));
  CHECK_THROWS_AS(noise_power_dbm(0.0, 5.0), std::domain_error);
}

TEST_CASE("normalized gain at the inner radius") {
  SystemConfig c;
  const double g = normalized_gain(c, 30.0, 0.0);
  CHECK(10.0 * std::log10(g) == doctest::Approx(-(72.0 + 29.2 * std::log10(30.0) - 79.0)));
  CHECK(std::abs(10.0 * std::log10(g) + 36.13) < 0.005);
}

TEST_CASE("degenerate annulus pins every distance") {
  SystemConfig c;
  c.cell_radius_m = c.min_distance_m;
  c.shadow_sigma_db = 0.0;
  Rng rng(3);
  const auto drop = sample_user_drop(c, rng);
  REQUIRE(drop.distances_m.size() == static_cast<std::size_t>(c.n_users));
  for (std::size_t n = 0; n < drop.gamma.size(); ++n) {
    CHECK(drop.distances_m[n] == doctest::Approx(c.min_distance_m));
    CHECK(drop.gamma[n] == doctest::Approx(normalized_gain(c, c.min_distance_m, 0.0)));
  }
}

TEST_CASE("shadowing has zero dB mean") {
  SystemConfig c;
  c.n_users = 100000;
  c.cell_radius_m = c.min_distance_m;
  Rng rng(11);
  const auto drop = sample_user_drop(c, rng);
  const double ref = 10.0 * std::log10(normalized_gain(c, c.min_distance_m, 0.0));
  double mean = 0.0;
  for (double g : drop.gamma) mean += ref - 10.0 * std::log10(g);
  mean /= drop.gamma.size();
  CHECK(std::abs(mean) < 0.1);
}

TEST_CASE("interfering users sit outside the cell") {
  SystemConfig c;
  Rng rng(5);
  const auto drop = sample_interfering_drop(c, rng);
  for (double d : drop.distances_m) {
    CHECK(d >= c.cell_radius_m);
    CHECK(d <= 3.0 * c.cell_radius_m);
  }
}

TEST_CASE("path count moments") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample_path_count(0.0, rng) == 1);
  CHECK_THROWS_AS(sample_path_count(-1.0, rng), std::domain_error);

  constexpr int n = 1000000;
  double m1 = 0.0;
  for (int i = 0; i < n; ++i) m1 += sample_path_count(1.0, rng);
  CHECK(m1 / n == doctest::Approx(1.0 + std::exp(-1.0)).epsilon(0.01));

  double m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double l = sample_path_count(2.0, rng);
    m2 += l * l;
  }
  CHECK(std::abs(m2 / n - (std::exp(-2.0) + 2.0 + 4.0)) < 0.05);
}

TEST_CASE("support is distinct, sorted and capped at n_rf") {
  Rng rng(9);
  const auto s = sample_support(4, 3, 50.0, rng);
  for (const auto& rows : s.rows) {
    CHECK(rows.size() == 4);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k - 1] < rows[k]);
  }
  CHECK_THROWS_AS(sample_support(0, 1, 1.0, rng), std::invalid_argument);
}

TEST_CASE("column energy and cross-correlation") {
  constexpr double lambda = 12.8;
  constexpr int n_rf = 128;
  constexpr int reps = 100000;
  const std::vector<double> gamma{1.0, 1.0};
  Rng rng(21);
  double energy = 0.0, cross = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto ch = sample_complex_gains(sample_support(n_rf, 2, lambda, rng), gamma, rng);
    energy += ch.gains.col(0).squaredNorm();
    cross += std::norm(ch.gains.col(0).dot(ch.gains.col(1)));
  }
  const double el = lambda + std::exp(-lambda);
  CHECK(energy / reps == doctest::Approx(el).epsilon(0.01));
  CHECK(cross / reps == doctest::Approx(el * el / n_rf).epsilon(0.02));
}

TEST_CASE("dense column has chi-square mean") {
  Rng rng(4);
  const std::vector<double> gamma{1.0};
  double e = 0.0;
  for (int r = 0; r < 20000; ++r) {
    const auto ch = sample_complex_gains(sample_support(4, 1, 1e6, rng), gamma, rng);
    CHECK(ch.path_counts[0] == 4);
    e += ch.gains.squaredNorm();
  }
  CHECK(e / 20000 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("row gains") {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
  g(0, 0) = {1.0, 0.0};
  g(0, 1) = {0.0, 1.0};
  const std::vector<double> gamma{1.0, 4.0};
  const auto r = row_gains(make_channel(g, gamma));
  CHECK(r[0] == doctest::Approx(5.0));
  CHECK(r[1] == 0.0);

  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = {std::sqrt(0.5), 0.0};
  const std::vector<double> two{2.0};
  CHECK(row_gains(make_channel(one, two))[0] == doctest::Approx(1.0));
  CHECK(make_channel(one, two).beamspace()(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("stacking appends columns") {
  Rng rng(2);
  const std::vector<double> a{1.0, 2.0}, b{3.0};
  const auto own = sample_complex_gains(sample_support(6, 2, 2.0, rng), a, rng);
  const std::vector<ChannelRealization> others{sample_complex_gains(sample_support(6, 1, 2.0, rng), b, rng)};
  const auto s = stack_users(own, others);
  CHECK(s.n_users() == 3);
  CHECK(s.gamma[2] == 3.0);
  CHECK(s.gains.col(2).isApprox(others[0].gains.col(0)));
  const std::vector<ChannelRealization> bad{sample_complex_gains(sample_support(5, 1, 2.0, rng), b, rng)};
  CHECK_THROWS_AS(stack_users(own, bad), std::invalid_argument);
}
