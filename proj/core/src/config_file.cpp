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

#include "radc/config_file.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace radc {

namespace {

namespace pt = boost::property_tree;

template <class T>
T value_of(const pt::ptree& node, const std::string& key) {
  const auto v = node.get_value_optional<T>();
  if (!v) throw std::invalid_argument("config: bad value for '" + key + "': '" + node.data() + "'");
  return *v;
}

bool bool_of(const pt::ptree& node, const std::string& key) {
  const std::string& s = node.data();
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("config: bad boolean for '" + key + "': '" + s + "'");
}

using Setter = std::function<void(const pt::ptree&, const std::string&)>;

void apply(const pt::ptree& section, const std::string& name,
           const std::map<std::string, Setter>& setters) {
  for (const auto& [key, node] : section) {
    if (!node.empty())
      throw std::invalid_argument("config: nested entry '" + name + "." + key + "'");
    if (!setters.count(key)) throw std::invalid_argument("config: unknown key '" + name + "." + key + "'");
  }
  for (const auto& [key, node] : section) setters.at(key)(node, name + "." + key);
}

}  // namespace

ConfigFile parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  ConfigFile out;
  SystemConfig& s = out.system;
  PowerModel& p = out.power;

  for (const auto& [name, section] : tree) {
    if (name != "system" && name != "power" && name != "experiment")
      throw std::invalid_argument("config: unknown section '" + name + "'");
    if (section.empty() && !section.data().empty())
      throw std::invalid_argument("config: key '" + name + "' outside any section");
  }

  if (const auto sys = tree.get_child_optional("system")) {
    std::optional<int> antennas, n_rf;
    std::map<std::string, Setter> setters{
        {"n_antennas", [&](auto& n, auto& k) { antennas = value_of<int>(n, k); }},
        {"n_rf", [&](auto& n, auto& k) { n_rf = value_of<int>(n, k); }},
        {"n_users", [&](auto& n, auto& k) { s.n_users = value_of<int>(n, k); }},
        {"tau", [&](auto& n, auto& k) { s.tau = value_of<double>(n, k); }},
        {"epsilon", [&](auto& n, auto& k) { s.epsilon = value_of<double>(n, k); }},
        {"lambda_p", [&](auto& n, auto& k) { s.lambda_p_override = value_of<double>(n, k); }},
        {"tx_power_dbm", [&](auto& n, auto& k) { s.tx_power_dbm = value_of<double>(n, k); }},
        {"bandwidth_hz", [&](auto& n, auto& k) { s.bandwidth_hz = value_of<double>(n, k); }},
        {"noise_figure_db", [&](auto& n, auto& k) { s.noise_figure_db = value_of<double>(n, k); }},
        {"carrier_ghz", [&](auto& n, auto& k) { s.carrier_ghz = value_of<double>(n, k); }},
        {"cell_radius_m", [&](auto& n, auto& k) { s.cell_radius_m = value_of<double>(n, k); }},
        {"min_distance_m", [&](auto& n, auto& k) { s.min_distance_m = value_of<double>(n, k); }},
        {"pathloss_alpha_db", [&](auto& n, auto& k) { s.pathloss_alpha_db = value_of<double>(n, k); }},
        {"pathloss_beta", [&](auto& n, auto& k) { s.pathloss_beta = value_of<double>(n, k); }},
        {"shadow_sigma_db", [&](auto& n, auto& k) { s.shadow_sigma_db = value_of<double>(n, k); }},
        {"shadow_convention",
         [&](auto& n, auto& k) {
           if (n.data() == "std_dev") s.shadow_convention = ShadowConvention::std_dev;
           else if (n.data() == "variance") s.shadow_convention = ShadowConvention::variance;
           else throw std::invalid_argument("config: bad value for '" + k + "'");
         }},
        {"constraint_bits", [&](auto& n, auto& k) { s.constraint_bits = value_of<int>(n, k); }},
        {"block_len", [&](auto& n, auto& k) { s.block_len = value_of<int>(n, k); }},
        {"resample_drop_per_block",
         [&](auto& n, auto& k) { s.resample_drop_per_block = bool_of(n, k); }},
        {"n_interfering_cells", [&](auto& n, auto& k) { s.n_interfering_cells = value_of<int>(n, k); }},
    };
    apply(*sys, "system", setters);
    if (antennas) s.set_antennas(*antennas);
    if (n_rf) s.n_rf = *n_rf;
  }

  if (const auto pw = tree.get_child_optional("power")) {
    std::map<std::string, Setter> setters{
        {"c_conv", [&](auto& n, auto& k) { p.c_conv = value_of<double>(n, k); }},
        {"f_s", [&](auto& n, auto& k) { p.f_s = value_of<double>(n, k); }},
        {"p_lna", [&](auto& n, auto& k) { p.p_lna = value_of<double>(n, k); }},
        {"p_ps", [&](auto& n, auto& k) { p.p_ps = value_of<double>(n, k); }},
        {"p_rfchain", [&](auto& n, auto& k) { p.p_rfchain = value_of<double>(n, k); }},
        {"p_bb", [&](auto& n, auto& k) { p.p_bb = value_of<double>(n, k); }},
        {"c_sw_up", [&](auto& n, auto& k) { p.c_sw_up = value_of<double>(n, k); }},
        {"c_sw_down", [&](auto& n, auto& k) { p.c_sw_down = value_of<double>(n, k); }},
        {"b_infinity", [&](auto& n, auto& k) { p.b_infinity = value_of<int>(n, k); }},
        {"zero_bit_as_one_step", [&](auto& n, auto& k) { p.zero_bit_as_one_step = bool_of(n, k); }},
    };
    apply(*pw, "power", setters);
  }

  if (const auto ex = tree.get_child_optional("experiment"))
    for (const auto& [key, node] : *ex) out.experiment[key] = node.data();

  try {
    s.validate();
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return out;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace radc
