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

#ifndef RADC_QUANTIZER_HPP
#define RADC_QUANTIZER_HPP

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include "radc/channel.hpp"

namespace radc {

/// pi * sqrt(3) / 2, the high-resolution distortion constant of the Gaussian
/// MMSE scalar quantizer.
inline constexpr double kHighResDistortion = std::numbers::pi * std::numbers::sqrt3 / 2.0;

/// Normalised distortion of the Gaussian MMSE quantizer for 1..5 bits.
inline constexpr std::array<double, 5> kDistortionTable = {0.3634, 0.1175, 0.03454, 0.009497,
                                                           0.002499};

/// Which distortion curve backs a ResolutionProfile.
enum class BetaModel {
  table,     ///< tabulated values for 1..5 bits, high-resolution formula above
  analytic,  ///< high-resolution formula for every b >= 1, clipped to <= 1
};

/// Normalised quantization error for an integer bit count: 1 for b = 0,
/// tabulated for 1..5, (pi sqrt3 / 2) 2^{-2b} from 6 on.
double beta(int bits);

/// (pi sqrt3 / 2) 2^{-2b} for any real b. Not clipped; exceeds 1 for b < ~0.72.
double beta_analytic(double bits);

/// 1 - beta(bits).
double alpha(int bits);

/// MSQE beta(b) * sigma^2. Throws std::domain_error for negative variance.
double msqe(double sigma_sq, int bits);

/// Per-chain AQNM coefficients. alpha_i = 1 - beta_i always; alpha_i = 0 marks
/// a deactivated chain, which downstream metrics drop.
struct ResolutionProfile {
  std::vector<double> bits;  ///< integer-valued unless built from real bits
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t size() const { return alpha.size(); }
  bool active(std::size_t i) const { return alpha[i] > 0.0; }

  static ResolutionProfile from_bits(std::span<const int> bits, BetaModel model = BetaModel::table);

  /// Uniform profile, e.g. b = 12 for the infinite-resolution benchmark.
  static ResolutionProfile uniform(std::size_t n_rf, int bits, BetaModel model = BetaModel::table);

  /// Profile for relaxed (real) bit counts: b_i -> max(b_i, 0), analytic beta,
  /// alpha clipped at zero.
  static ResolutionProfile from_real_bits(std::span<const double> bits);

  /// Ideal (alpha = 1, beta = 0) chains.
  static ResolutionProfile ideal(std::size_t n_rf);
};

/// Diagonal of R_nqnq: alpha_i beta_i (p_u ||[H_b]_{i,:}||^2 + 1).
/// Throws std::invalid_argument if the profile length differs from n_rf.
std::vector<double> quantization_noise_covariance(const ChannelRealization& channel,
                                                  const ResolutionProfile& profile, double p_u);

/// Lloyd-Max design of a `bits`-bit MMSE scalar quantizer for a unit Gaussian,
/// iterated to a fixed point on a uniform grid of `n_points` samples over
/// [-10, 10]. Returns the normalised distortion E[(x - Q(x))^2] / E[x^2].
/// Throws std::domain_error for bits outside 1..5 and std::runtime_error if
/// the iteration does not settle.
double lloyd_max_distortion(int bits, int n_points = 400001);

}  // namespace radc

#endif  // RADC_QUANTIZER_HPP
