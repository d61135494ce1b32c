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

#ifndef RADC_METRICS_HPP
#define RADC_METRICS_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "radc/channel.hpp"
#include "radc/quantizer.hpp"

namespace radc {

enum class MetricKind {
  capacity,
  capacity_low,
  capacity_low_revba,
  gmi,
  mrc_mc,
  analytic,
  analytic_largepath,
  analytic_multicell,
  asymptotic,
};

std::string_view to_string(MetricKind kind);

/// Rates in bits/s/Hz. per_user_rate is empty for metrics that only exist as
/// a sum (capacity and its approximations).
struct RateReport {
  std::vector<double> per_user_rate;
  double sum_rate = 0.0;
  MetricKind kind = MetricKind::capacity;

  /// Builds a report whose sum is the ordered sum of `per_user`.
  static RateReport from_users(std::vector<double> per_user, MetricKind kind);
  static RateReport from_sum(double sum, MetricKind kind);
};

// ---- capacity ---------------------------------------------------------------

/// log2 det(I + p R^{-1} D_a H H^H D_a) with R = D_a^2 + R_nq. Evaluated in
/// the user-dimension form log2 det(I + p H^H D_a R^{-1} D_a H) through a
/// Cholesky factor; rows with alpha = 0 are dropped. Throws
/// std::invalid_argument if the profile length differs from n_rf and
/// std::runtime_error if the factorisation fails.
double capacity(const ChannelRealization& channel, const ResolutionProfile& profile, double p_u);

/// log2(1 + sum_i p a_i g_i / (1 + p (1 - a_i) g_i)), g_i the row gains.
double capacity_low_snr(const ChannelRealization& channel, const ResolutionProfile& profile,
                        double p_u);

/// Per-row distortion of the relaxed revised-MMSQE solution with the
/// non-negativity clip applied:
///   pi sqrt3 2^{-(2 bbar + 1)} min(N^-2 g_i^{-2/3} (sum_j g_j^{1/3})^2, 2^{2 bbar}).
/// Zero-gain rows take the capped value. Throws std::domain_error if every
/// gain is zero.
std::vector<double> revba_beta(std::span<const double> gains, int constraint_bits);

/// Low-SNR capacity with relaxed revised-MMSQE bits substituted:
///   log2(1 + sum_i p (1 - bt_i) g_i / (1 + p bt_i g_i)), bt = revba_beta().
double capacity_low_snr_revba(std::span<const double> gains, double p_u, int constraint_bits);
double capacity_low_snr_revba(const ChannelRealization& channel, double p_u, int constraint_bits);

// ---- GMI ------------------------------------------------------------------

/// -log2(1 - kappa_n) with kappa_n the optimal-combiner correlation
/// R_ys^H R_yy^{-1} R_ys. Throws std::out_of_range for a bad user index and
/// std::runtime_error if kappa leaves [0, 1).
double gmi_user(const ChannelRealization& channel, const ResolutionProfile& profile, double p_u,
                int n);

/// gmi_user for every column, sharing one factorisation.
std::vector<double> gmi_all(const ChannelRealization& channel, const ResolutionProfile& profile,
                            double p_u);

// ---- MRC rate ---------------------------------------------------------------

/// Instantaneous MRC rate of user n with per-chain resolutions:
///   log2(1 + p gamma_n (sum_i a_i^2 |g_in|^2)^2 / Psi),
///   Psi = p sum_{m != n} gamma_m |g_n^H D_a^2 g_m|^2 + g_n^H (D_a^4 + D_a R_nq D_a) g_n.
/// Interference runs over every column, so stacked out-of-cell users are
/// included. Returns 0 when user n sees no active chain.
double mrc_rate_user(const ChannelRealization& channel, const ResolutionProfile& profile,
                     double p_u, int n);

/// mrc_rate_user for the first `n_users` columns (all columns when negative).
std::vector<double> mrc_rates(const ChannelRealization& channel, const ResolutionProfile& profile,
                              double p_u, int n_users = -1);

// ---- closed-form approximations --------------------------------------------

/// Closed-form ergodic rate of user n with fixed ADCs:
///   log2(1 + p gamma_n a (l^2 + 2l + 2e^{-l}) / eta),
///   eta = (l + e^{-l}) (1 + 2 p gamma_n (1 - a) + (l + e^{-l}) (p / N_RF) sum_{k != n} gamma_k).
double analytic_rate_alpha(std::span<const double> gamma, int n, double lambda_p, double p_u,
                           double alpha, int n_rf);
double analytic_rate(std::span<const double> gamma, int n, double lambda_p, double p_u, int bits,
                     int n_rf);

/// Large-path form: (l + e^{-l}) replaced by l, numerator factor (l + 2).
double analytic_rate_largepath_alpha(std::span<const double> gamma, int n, double lambda_p,
                                     double p_u, double alpha, int n_rf);
double analytic_rate_largepath(std::span<const double> gamma, int n, double lambda_p, double p_u,
                               int bits, int n_rf);

/// Own-cell gains plus one gain vector per interfering cell.
struct MultiCellScene {
  std::vector<double> gamma;
  std::vector<std::vector<double>> interfering;

  int n_cells() const { return static_cast<int>(interfering.size()); }
  /// Throws std::invalid_argument unless every gain is positive and finite.
  void validate() const;
};

/// Multi-cell closed form: the out-of-cell gains join the interference sum
/// inside eta. Equals analytic_rate when there are no interfering cells.
double analytic_rate_multicell_alpha(const MultiCellScene& scene, int n, double lambda_p,
                                     double p_u, double alpha, int n_rf);
double analytic_rate_multicell(const MultiCellScene& scene, int n, double lambda_p, double p_u,
                               int bits, int n_rf);

/// Per-user closed form for every user, bundled as a report.
RateReport analytic_report(std::span<const double> gamma, double lambda_p, double p_u, int bits,
                           int n_rf);

// ---- asymptotic limits -------------------------------------------------------

enum class AsymptoticKind {
  inf_bits,                ///< a = 1
  inf_power,               ///< p -> inf at fixed l
  inf_power_inf_antennas,  ///< p -> inf and N_r -> inf at fixed l
  large_array_limit,       ///< p -> inf with l = eps N_r, N_RF = tau N_r
  power_scaling,           ///< p = E_s / (tau N_r), l = eps N_r, N_r -> inf
};

std::string_view to_string(AsymptoticKind kind);
/// Throws std::invalid_argument for unknown names.
AsymptoticKind parse_asymptotic_kind(std::string_view name);

/// Inputs for asymptotic_rate(). Each kind reads a subset:
///   inf_bits:               gamma, n, lambda_p, p_u, n_rf
///   inf_power:              gamma, n, lambda_p, alpha, n_rf
///   inf_power_inf_antennas: lambda_p, alpha
///   large_array_limit:      gamma, n, alpha, epsilon, tau, n_antennas
///   power_scaling:          gamma, n, alpha, epsilon, tau, e_s
struct AsymptoticParams {
  std::vector<double> gamma;
  int n = 0;
  std::optional<double> lambda_p;
  std::optional<double> p_u;
  std::optional<double> alpha;
  std::optional<int> n_rf;
  std::optional<double> epsilon;
  std::optional<double> tau;
  std::optional<int> n_antennas;
  std::optional<double> e_s;
};

/// Throws std::invalid_argument when a field the kind needs is missing and
/// std::domain_error when the limit diverges (a = 1 for inf_power_inf_antennas).
double asymptotic_rate(AsymptoticKind kind, const AsymptoticParams& params);

}  // namespace radc

#endif  // RADC_METRICS_HPP
