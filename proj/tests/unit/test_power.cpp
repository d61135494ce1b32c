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

#include <stdexcept>
#include <vector>

#include "radc/power.hpp"

using namespace radc;

TEST_CASE("converter power") {
  CHECK(adc_power(0) == 0.0);
  CHECK(adc_power(-2) == 0.0);
  CHECK(adc_power(1) == doctest::Approx(0.988e-3));
  CHECK(adc_power(4) == doctest::Approx(7.904e-3));
}

TEST_CASE("switching power") {
  CHECK(switching_power(2, 2) == 0.0);
  CHECK(switching_power(3, 1) == doctest::Approx(20.82e-3));
  CHECK(switching_power(1, 3) == doctest::Approx(5.64e-3));
  CHECK(switching_power(1, 0) == doctest::Approx(3.47e-3 * (2.0 - 1.0)));

  PowerModel strict;
  strict.zero_bit_as_one_step = false;
  CHECK(switching_power(1, 0, strict) == doctest::Approx(3.47e-3 * 2.0));
  CHECK(switching_power(0, 2, strict) == doctest::Approx(0.94e-3 * 4.0));
}

TEST_CASE("receiver power") {
  const std::vector<int> off(16, 0);
  const auto idle = receiver_power(32, off);
  CHECK(idle.active_chains == 0);
  CHECK(idle.total == doctest::Approx(32 * 0.020 + 0.200));

  const std::vector<int> four(128, 4);
  const auto r = receiver_power(256, four);
  const double expected = 256 * 0.020 + 128 * (256 * 0.010 + 0.040) + 2 * 128 * 7.904e-3 + 0.200;
  CHECK(expected == doctest::Approx(340.1434).epsilon(1e-6));
  CHECK(r.total == doctest::Approx(expected));
  CHECK(r.switching == 0.0);
  CHECK(r.active_chains == 128);

  std::vector<int> prev(128, 4);
  prev[0] = 2;
  const auto s = receiver_power(256, four, std::span<const int>(prev));
  CHECK(s.switching == doctest::Approx(2.0 * switching_power(4, 2)));
  CHECK(s.total == doctest::Approx(r.total + s.switching));

  const std::vector<int> short_prev(3, 1);
  CHECK_THROWS_AS(receiver_power(256, four, std::span<const int>(short_prev)), std::invalid_argument);

  const auto m = receiver_power_from_means(256, 128.0, 128 * 7.904e-3, 0.0);
  CHECK(m.total == doctest::Approx(expected));
}

TEST_CASE("energy efficiency") {
  CHECK(energy_efficiency(0.0, 1e9, 100.0) == 0.0);
  CHECK(energy_efficiency(10.0, 1e9, 100.0) == doctest::Approx(1e8));
  CHECK(energy_efficiency(10.0, 2e9, 100.0) == doctest::Approx(2e8));
  CHECK_THROWS_AS(energy_efficiency(1.0, 1e9, 0.0), std::domain_error);
}

TEST_CASE("power model validation") {
  PowerModel m;
  CHECK_NOTHROW(m.validate());
  m.p_lna = -1.0;
  CHECK_THROWS(m.validate());
}
