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

#ifndef RADC_ALLOCATOR_HPP
#define RADC_ALLOCATOR_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "radc/channel.hpp"

namespace radc {

/// Resolution cap for integer allocations; also the stand-in for an
/// infinite-resolution converter.
inline constexpr int kMaxBits = 12;

/// Resolution of the strong chains in the mixed 1-bit / 7-bit baseline.
inline constexpr int kMixedHighBits = 7;

enum class Strategy {
  fixed,     ///< every chain at the constraint resolution
  mmsqe,     ///< minimise MSQE of the full received signal (noise included)
  revmmsqe,  ///< minimise MSQE of the noise-free desired signal
  mixed,     ///< 1-bit everywhere, 7-bit on the strongest chains
};

std::string_view to_string(Strategy s);
/// Throws std::invalid_argument for unknown names.
Strategy parse_strategy(std::string_view name);

struct BitAllocation {
  std::vector<double> real_bits;  ///< relaxed solution (empty for fixed/mixed)
  std::vector<int> integer_bits;
  int constraint_bits = 0;
  int active_count = 0;

  int n_rf() const { return static_cast<int>(integer_bits.size()); }

  /// Sum over active chains of 2^{b_i}, in units of c * f_s.
  std::int64_t adc_power_units() const;
  /// n_rf * 2^{constraint_bits}.
  std::int64_t adc_budget_units() const;
  bool within_budget() const { return adc_power_units() <= adc_budget_units(); }
};

/// Sum over b_i > 0 of 2^{b_i} (zero-bit chains draw no converter power).
std::int64_t adc_power_units(std::span<const int> bits);

/// Relaxed MMSQE solution
///   b_i = bbar + log2(N (1 + p g_i)^{1/3} / sum_j (1 + p g_j)^{1/3}).
/// Satisfies sum_i 2^{b_i} = N 2^{bbar}. Throws std::invalid_argument on empty
/// input and std::domain_error for negative p_u or gains.
std::vector<double> mmsqe_real_solution(std::span<const double> gains, double p_u,
                                        int constraint_bits);

/// Relaxed revised-MMSQE solution
///   b_i = bbar + log2(N g_i^{1/3} / sum_j g_j^{1/3}).
/// Zero-gain rows get -infinity and drop out of the normalising sum. Throws
/// std::domain_error if every gain is zero.
std::vector<double> revmmsqe_real_solution(std::span<const double> gains, int constraint_bits);

/// MSQE increase per unit of converter power saved by flooring b_hat:
///   (2^{-2 floor b} - 2^{-2 b}) / (2^{b} - 2^{floor b}) * sigma^2.
/// Throws std::invalid_argument for integral or non-positive b_hat.
double tradeoff(double b_hat, double sigma_sq);

/// Tradeoff mapping of a relaxed solution onto non-negative integers under
/// the budget sum_{b_i>0} 2^{b_i} <= N 2^{bbar}:
///  - b_hat <= 0 deactivates the chain;
///  - positive non-integers are rounded up and become floor candidates;
///  - while over budget, the candidate with the smallest tradeoff() is
///    floored and retired (ties -> lowest index).
/// `sigmas` are the variances the MSQE is measured on (sigma_y^2 for MMSQE,
/// sigma_x^2 for the revised rule). Results are capped at kMaxBits.
BitAllocation integer_mapping(std::span<const double> real_bits, std::span<const double> sigmas,
                              int constraint_bits);

BitAllocation fixed_allocation(int n_rf, int constraint_bits);

/// Start from 1 bit everywhere and upgrade chains to 7 bits in decreasing gain
/// order while the budget holds. Throws std::domain_error for bbar = 0.
BitAllocation mixed_adc_allocation(std::span<const double> gains, int constraint_bits);

/// Strategy dispatch on row gains ||[H_b]_{i,:}||^2.
BitAllocation allocate_from_gains(std::span<const double> gains, double p_u, int constraint_bits,
                                  Strategy strategy);

BitAllocation allocate(const ChannelRealization& channel, double p_u, int constraint_bits,
                       Strategy strategy);

/// E ||[H_b]_{i,:}||^2 given the support and gamma (unit-variance gains):
/// sum_k gamma_k 1{i in P_k}.
std::vector<double> expected_row_gains(const PathSupport& support, std::span<const double> gamma);

/// Allocation held for a whole slow-fading block, computed from the expected
/// row gains. Only mmsqe and revmmsqe are meaningful here.
BitAllocation slow_switching_allocation(const PathSupport& support, std::span<const double> gamma,
                                        double p_u, int constraint_bits, Strategy strategy);

}  // namespace radc

#endif  // RADC_ALLOCATOR_HPP
