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

#include "radc/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace radc {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::fixed: return "fixed";
    case Strategy::mmsqe: return "mmsqe";
    case Strategy::revmmsqe: return "revmmsqe";
    case Strategy::mixed: return "mixed";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "fixed") return Strategy::fixed;
  if (name == "mmsqe") return Strategy::mmsqe;
  if (name == "revmmsqe") return Strategy::revmmsqe;
  if (name == "mixed") return Strategy::mixed;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::int64_t adc_power_units(std::span<const int> bits) {
  std::int64_t total = 0;
  for (int b : bits)
    if (b > 0) total += std::int64_t{1} << b;
  return total;
}

std::int64_t BitAllocation::adc_power_units() const { return radc::adc_power_units(integer_bits); }

std::int64_t BitAllocation::adc_budget_units() const {
  return static_cast<std::int64_t>(integer_bits.size()) * (std::int64_t{1} << constraint_bits);
}

namespace {

void check_common(std::span<const double> gains, int constraint_bits, const char* who) {
  if (gains.empty()) throw std::invalid_argument(std::string(who) + ": empty gain vector");
  if (constraint_bits < 0 || constraint_bits > kMaxBits)
    throw std::domain_error(std::string(who) + ": constraint bits out of range");
  for (double g : gains)
    if (!(g >= 0.0)) throw std::domain_error(std::string(who) + ": gains must be non-negative");
}

// bbar + log2(N w_i / sum_j w_j) for positive weights, -inf for zero weights.
std::vector<double> cube_root_solution(std::span<const double> weights, int constraint_bits) {
  const double n = static_cast<double>(weights.size());
  double total = 0.0;
  for (double w : weights) total += std::cbrt(w);
  std::vector<double> out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double c = std::cbrt(weights[i]);
    out[i] = c > 0.0 ? constraint_bits + std::log2(n * c / total)
                     : -std::numeric_limits<double>::infinity();
  }
  return out;
}

int count_active(std::span<const int> bits) {
  return static_cast<int>(std::count_if(bits.begin(), bits.end(), [](int b) { return b > 0; }));
}

// Real solutions that differ from an integer by rounding noise only are
// treated as integral.
bool is_integral(double b) { return std::abs(b - std::round(b)) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

std::vector<double> mmsqe_real_solution(std::span<const double> gains, double p_u,
                                        int constraint_bits) {
  check_common(gains, constraint_bits, "mmsqe_real_solution");
  if (!(p_u >= 0.0)) throw std::domain_error("mmsqe_real_solution: p_u must be non-negative");
  std::vector<double> sigma(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) sigma[i] = 1.0 + p_u * gains[i];
  return cube_root_solution(sigma, constraint_bits);
}

std::vector<double> revmmsqe_real_solution(std::span<const double> gains, int constraint_bits) {
  check_common(gains, constraint_bits, "revmmsqe_real_solution");
  if (std::all_of(gains.begin(), gains.end(), [](double g) { return g == 0.0; }))
    throw std::domain_error("revmmsqe_real_solution: all row gains are zero");
  return cube_root_solution(gains, constraint_bits);
}

double tradeoff(double b_hat, double sigma_sq) {
  if (!(b_hat > 0.0) || is_integral(b_hat))
    throw std::invalid_argument("tradeoff: b_hat must be positive and non-integral");
  const double fl = std::floor(b_hat);
  const double err_gain = std::exp2(-2.0 * fl) - std::exp2(-2.0 * b_hat);
  const double power_saved = std::exp2(b_hat) - std::exp2(fl);
  return err_gain / power_saved * sigma_sq;
}

BitAllocation integer_mapping(std::span<const double> real_bits, std::span<const double> sigmas,
                              int constraint_bits) {
  if (real_bits.size() != sigmas.size())
    throw std::invalid_argument("integer_mapping: real_bits and sigmas differ in length");
  if (real_bits.empty()) throw std::invalid_argument("integer_mapping: empty allocation");
  if (constraint_bits < 0 || constraint_bits > kMaxBits)
    throw std::domain_error("integer_mapping: constraint bits out of range");

  const std::size_t n = real_bits.size();
  BitAllocation out;
  out.real_bits.assign(real_bits.begin(), real_bits.end());
  out.integer_bits.assign(n, 0);
  out.constraint_bits = constraint_bits;

  const std::int64_t budget = static_cast<std::int64_t>(n) << constraint_bits;
  std::int64_t total = 0;
  std::vector<std::size_t> candidates;

  for (std::size_t i = 0; i < n; ++i) {
    const double b = real_bits[i];
    if (!(b > 0.0)) continue;  // deactivated
    if (is_integral(b)) {
      out.integer_bits[i] = static_cast<int>(std::lround(b));
    } else {
      out.integer_bits[i] = static_cast<int>(std::ceil(b));
      candidates.push_back(i);
    }
    if (out.integer_bits[i] > 0) total += std::int64_t{1} << std::min(out.integer_bits[i], 62);
  }

  if (total > budget) {
    std::vector<double> score(n, 0.0);
    for (std::size_t i : candidates) score[i] = tradeoff(real_bits[i], sigmas[i]);

    while (total > budget) {
      if (candidates.empty())
        throw std::logic_error("integer_mapping: budget unreachable (inconsistent real solution)");
      // argmin over candidates; candidates stay in index order so the first
      // minimum is the lowest index.
      auto best = candidates.begin();
      for (auto it = candidates.begin(); it != candidates.end(); ++it)
        if (score[*it] < score[*best]) best = it;
      const std::size_t i = *best;
      candidates.erase(best);

      total -= std::int64_t{1} << out.integer_bits[i];
      out.integer_bits[i] -= 1;
      if (out.integer_bits[i] > 0) total += std::int64_t{1} << out.integer_bits[i];
    }
  }

  for (int& b : out.integer_bits) b = std::min(b, kMaxBits);
  out.active_count = count_active(out.integer_bits);
  return out;
}

BitAllocation fixed_allocation(int n_rf, int constraint_bits) {
  if (n_rf <= 0) throw std::invalid_argument("fixed_allocation: n_rf must be positive");
  if (constraint_bits < 0 || constraint_bits > kMaxBits)
    throw std::domain_error("fixed_allocation: constraint bits out of range");
  BitAllocation out;
  out.integer_bits.assign(n_rf, constraint_bits);
  out.constraint_bits = constraint_bits;
  out.active_count = constraint_bits > 0 ? n_rf : 0;
  return out;
}

BitAllocation mixed_adc_allocation(std::span<const double> gains, int constraint_bits) {
  if (gains.empty()) throw std::invalid_argument("mixed_adc_allocation: empty gain vector");
  if (constraint_bits < 1)
    throw std::domain_error("mixed_adc_allocation: needs at least a 1-bit budget per chain");
  if (constraint_bits > kMaxBits)
    throw std::domain_error("mixed_adc_allocation: constraint bits out of range");

  const std::size_t n = gains.size();
  BitAllocation out;
  out.integer_bits.assign(n, 1);
  out.constraint_bits = constraint_bits;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

  const std::int64_t budget = static_cast<std::int64_t>(n) << constraint_bits;
  const std::int64_t step = (std::int64_t{1} << kMixedHighBits) - 2;
  std::int64_t total = static_cast<std::int64_t>(n) * 2;
  for (std::size_t i : order) {
    if (total + step > budget) break;
    out.integer_bits[i] = kMixedHighBits;
    total += step;
  }
  out.active_count = static_cast<int>(n);
  return out;
}

BitAllocation allocate_from_gains(std::span<const double> gains, double p_u, int constraint_bits,
                                  Strategy strategy) {
  switch (strategy) {
    case Strategy::fixed:
      return fixed_allocation(static_cast<int>(gains.size()), constraint_bits);
    case Strategy::mixed:
      return mixed_adc_allocation(gains, constraint_bits);
    case Strategy::mmsqe: {
      const auto real = mmsqe_real_solution(gains, p_u, constraint_bits);
      std::vector<double> sigma_y(gains.size());
      for (std::size_t i = 0; i < gains.size(); ++i) sigma_y[i] = p_u * gains[i] + 1.0;
      return integer_mapping(real, sigma_y, constraint_bits);
    }
    case Strategy::revmmsqe: {
      const auto real = revmmsqe_real_solution(gains, constraint_bits);
      std::vector<double> sigma_x(gains.size());
      for (std::size_t i = 0; i < gains.size(); ++i) sigma_x[i] = p_u * gains[i];
      return integer_mapping(real, sigma_x, constraint_bits);
    }
  }
  throw std::invalid_argument("allocate_from_gains: unknown strategy");
}

BitAllocation allocate(const ChannelRealization& channel, double p_u, int constraint_bits,
                       Strategy strategy) {
  const auto gains = row_gains(channel);
  return allocate_from_gains(gains, p_u, constraint_bits, strategy);
}

std::vector<double> expected_row_gains(const PathSupport& support, std::span<const double> gamma) {
  if (static_cast<int>(gamma.size()) != support.n_users())
    throw std::invalid_argument("expected_row_gains: gamma length differs from user count");
  std::vector<double> out(support.n_rf, 0.0);
  for (int k = 0; k < support.n_users(); ++k)
    for (int i : support.rows[k]) out[i] += gamma[k];
  return out;
}

BitAllocation slow_switching_allocation(const PathSupport& support, std::span<const double> gamma,
                                        double p_u, int constraint_bits, Strategy strategy) {
  if (strategy != Strategy::mmsqe && strategy != Strategy::revmmsqe)
    throw std::invalid_argument("slow_switching_allocation: needs mmsqe or revmmsqe");
  const auto gains = expected_row_gains(support, gamma);
  return allocate_from_gains(gains, p_u, constraint_bits, strategy);
}

}  // namespace radc
