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
#include <sstream>
#include <stdexcept>

#include "radc/config.hpp"
#include "radc/config_file.hpp"

using namespace radc;

TEST_CASE("derived quantities") {
  SystemConfig c = SystemConfig::reference(256);
  CHECK(c.n_antennas == 256);
  CHECK(c.n_rf == 128);
  CHECK(c.lambda_p() == doctest::Approx(25.6));
  CHECK(c.tx_power_mw() == doctest::Approx(100.0));
  c.lambda_p_override = 3.0;
  CHECK(c.lambda_p() == 3.0);
  c.shadow_convention = ShadowConvention::variance;
  CHECK(c.shadow_std_db() == doctest::Approx(std::sqrt(8.7)));
}

TEST_CASE("validation") {
  SystemConfig c;
  CHECK_NOTHROW(c.validate());
  c.n_rf = c.n_antennas + 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.n_users = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SystemConfig{};
  c.min_distance_m = 500.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
}

TEST_CASE("config file") {
  std::istringstream in(R"(
[system]
tau = 0.25
n_antennas = 128
tx_power_dbm = 10
constraint_bits = 3

[power]
p_bb = 0.3

[experiment]
id = rate_vs_power
seed = 5
)");
  const auto f = parse_config(in);
  CHECK(f.system.n_antennas == 128);
  CHECK(f.system.n_rf == 32);
  CHECK(f.system.tx_power_dbm == 10.0);
  CHECK(f.system.constraint_bits == 3);
  CHECK(f.power.p_bb == 0.3);
  CHECK(f.experiment.at("seed") == "5");
}

TEST_CASE("config file errors") {
  std::istringstream unknown_key("[system]\nn_anntenas = 4\n");
  CHECK_THROWS_AS(parse_config(unknown_key), std::invalid_argument);
  std::istringstream unknown_section("[radio]\nx = 1\n");
  CHECK_THROWS_AS(parse_config(unknown_section), std::invalid_argument);
  std::istringstream bad_value("[system]\nn_users = many\n");
  CHECK_THROWS_AS(parse_config(bad_value), std::invalid_argument);
  CHECK_THROWS(load_config("/nonexistent/radc.ini"));
}
