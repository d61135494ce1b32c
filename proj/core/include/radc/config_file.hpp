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

#ifndef RADC_CONFIG_FILE_HPP
#define RADC_CONFIG_FILE_HPP

#include <istream>
#include <map>
#include <string>

#include "radc/config.hpp"
#include "radc/power.hpp"

namespace radc {

/// Parsed INI-style configuration.
///
///   [system]      SystemConfig field names
///   [power]       PowerModel field names
///   [experiment]  raw key/value pairs, interpreted by the harness
///
/// Unknown sections and unknown [system]/[power] keys are errors. In [system]
/// `tau` is applied before `n_antennas`, which re-derives n_rf; an explicit
/// `n_rf` wins over both.
struct ConfigFile {
  SystemConfig system;
  PowerModel power;
  std::map<std::string, std::string> experiment;
};

/// Throws std::invalid_argument with the offending key on any error.
ConfigFile parse_config(std::istream& in);
ConfigFile load_config(const std::string& path);

}  // namespace radc

#endif  // RADC_CONFIG_FILE_HPP
