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

#include "radc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

namespace radc {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::capacity: return "capacity";
    case MetricKind::capacity_low: return "capacity_low";
    case MetricKind::capacity_low_revba: return "capacity_low_revba";
    case MetricKind::gmi: return "gmi";
    case MetricKind::mrc_mc: return "mrc_mc";
    case MetricKind::analytic: return "analytic";
    case MetricKind::analytic_largepath: return "analytic_largepath";
    case MetricKind::analytic_multicell: return "analytic_multicell";
    case MetricKind::asymptotic: return "asymptotic";
  }
  return "unknown";
}

RateReport RateReport::from_users(std::vector<double> per_user, MetricKind kind) {
  RateReport r;
  r.sum_rate = std::accumulate(per_user.begin(), per_user.end(), 0.0);
  r.per_user_rate = std::move(per_user);
  r.kind = kind;
  return r;
}

RateReport RateReport::from_sum(double sum, MetricKind kind) {
  RateReport r;
  r.sum_rate = sum;
  r.kind = kind;
  return r;
}

namespace {

void check_profile(const ChannelRealization& channel, const ResolutionProfile& profile,
                   const char* who) {
  if (profile.size() != static_cast<std::size_t>(channel.n_rf()))
    throw std::invalid_argument(std::string(who) + ": profile length differs from n_rf");
}

void check_power(double p_u, const char* who) {
  if (!(p_u >= 0.0)) throw std::domain_error(std::string(who) + ": p_u must be non-negative");
}

// B = Lambda^{-1/2} D_a H over active rows, Lambda_i = a_i^2 + a_i b_i (p g_i + 1).
Eigen::MatrixXcd whitened_channel(const ChannelRealization& channel,
                                  const ResolutionProfile& profile, double p_u) {
  const auto gains = row_gains(channel);
  const Eigen::MatrixXcd h = channel.beamspace();
  std::vector<int> rows;
  for (int i = 0; i < channel.n_rf(); ++i)
    if (profile.active(i)) rows.push_back(i);
  Eigen::MatrixXcd b(static_cast<Eigen::Index>(rows.size()), h.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int i = rows[r];
    const double a = profile.alpha[i];
    const double lam = a * a + a * profile.beta[i] * (p_u * gains[i] + 1.0);
    b.row(static_cast<Eigen::Index>(r)) = (a / std::sqrt(lam)) * h.row(i);
  }
  return b;
}

Eigen::LLT<Eigen::MatrixXcd> factor_identity_plus(const Eigen::MatrixXcd& m, double p_u,
                                                  const char* who) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m.rows(), m.cols()) + p_u * m;
  a = 0.5 * (a + a.adjoint()).eval();
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(std::string(who) + ": matrix is not positive definite");
  return llt;
}

}  // namespace

double capacity(const ChannelRealization& channel, const ResolutionProfile& profile, double p_u) {
  check_profile(channel, profile, "capacity");
  check_power(p_u, "capacity");
  if (p_u == 0.0) return 0.0;
  const Eigen::MatrixXcd b = whitened_channel(channel, profile, p_u);
  if (b.rows() == 0) return 0.0;
  const Eigen::MatrixXcd m = b.adjoint() * b;
  const auto llt = factor_identity_plus(m, p_u, "capacity");
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) logdet += std::log(llt.matrixL()(k, k).real());
  return 2.0 * logdet / std::numbers::ln2;
}

double capacity_low_snr(const ChannelRealization& channel, const ResolutionProfile& profile,
                        double p_u) {
  check_profile(channel, profile, "capacity_low_snr");
  check_power(p_u, "capacity_low_snr");
  const auto gains = row_gains(channel);
  double acc = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const double a = profile.alpha[i];
    acc += p_u * a * gains[i] / (1.0 + p_u * (1.0 - a) * gains[i]);
  }
  return std::log2(1.0 + acc);
}

std::vector<double> revba_beta(std::span<const double> gains, int constraint_bits) {
  if (gains.empty()) throw std::invalid_argument("revba_beta: empty gain vector");
  double total = 0.0;
  for (double g : gains) {
    if (!(g >= 0.0)) throw std::domain_error("revba_beta: gains must be non-negative");
    total += std::cbrt(g);
  }
  if (total == 0.0) throw std::domain_error("revba_beta: all row gains are zero");

  const double n = static_cast<double>(gains.size());
  const double cap = std::ldexp(1.0, 2 * constraint_bits);
  const double scale = std::numbers::pi * std::numbers::sqrt3 * std::ldexp(1.0, -(2 * constraint_bits + 1));
  std::vector<double> out(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    double x = cap;
    if (gains[i] > 0.0) {
      const double r = total / (n * std::cbrt(gains[i]));
      x = std::min(r * r, cap);
    }
    out[i] = scale * x;
  }
  return out;
}

double capacity_low_snr_revba(std::span<const double> gains, double p_u, int constraint_bits) {
  check_power(p_u, "capacity_low_snr_revba");
  const auto bt = revba_beta(gains, constraint_bits);
  double acc = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i)
    acc += p_u * (1.0 - bt[i]) * gains[i] / (1.0 + p_u * bt[i] * gains[i]);
  return std::log2(1.0 + acc);
}

double capacity_low_snr_revba(const ChannelRealization& channel, double p_u, int constraint_bits) {
  const auto gains = row_gains(channel);
  return capacity_low_snr_revba(gains, p_u, constraint_bits);
}

std::vector<double> gmi_all(const ChannelRealization& channel, const ResolutionProfile& profile,
                            double p_u) {
  check_profile(channel, profile, "gmi_all");
  check_power(p_u, "gmi_all");
  std::vector<double> out(channel.n_users(), 0.0);
  if (p_u == 0.0) return out;
  const Eigen::MatrixXcd b = whitened_channel(channel, profile, p_u);
  if (b.rows() == 0) return out;
  const Eigen::MatrixXcd m = b.adjoint() * b;
  const auto llt = factor_identity_plus(m, p_u, "gmi_all");
  const Eigen::MatrixXcd x = llt.solve(m);
  for (int n = 0; n < channel.n_users(); ++n) {
    double kappa = p_u * x(n, n).real();
    if (kappa < 0.0 && kappa > -1e-12) kappa = 0.0;
    if (!(kappa >= 0.0 && kappa < 1.0))
      throw std::runtime_error("gmi: correlation coefficient outside [0, 1)");
    out[n] = -std::log1p(-kappa) / std::numbers::ln2;
  }
  return out;
}

double gmi_user(const ChannelRealization& channel, const ResolutionProfile& profile, double p_u,
                int n) {
  if (n < 0 || n >= channel.n_users()) throw std::out_of_range("gmi_user: user index");
  return gmi_all(channel, profile, p_u)[n];
}

std::vector<double> mrc_rates(const ChannelRealization& channel, const ResolutionProfile& profile,
                              double p_u, int n_users) {
  check_profile(channel, profile, "mrc_rates");
  check_power(p_u, "mrc_rates");
  const int total_users = channel.n_users();
  if (n_users < 0) n_users = total_users;
  if (n_users > total_users) throw std::out_of_range("mrc_rates: more users than columns");

  const auto gains = row_gains(channel);
  const Eigen::Index nr = channel.n_rf();
  Eigen::VectorXd a2(nr), noise(nr);
  for (Eigen::Index i = 0; i < nr; ++i) {
    const double a = profile.alpha[i];
    const double rq = a * profile.beta[i] * (p_u * gains[i] + 1.0);
    a2(i) = a * a;
    noise(i) = a * a * a * a + a * a * rq;
  }

  const Eigen::MatrixXcd& g = channel.gains;
  const Eigen::MatrixXcd own = g.leftCols(n_users);
  const Eigen::MatrixXcd c = own.adjoint() * (a2.asDiagonal() * g);  // n_users x total_users
  const Eigen::MatrixXd mag = g.cwiseAbs2();

  std::vector<double> out(n_users, 0.0);
  for (int n = 0; n < n_users; ++n) {
    const double diag = c(n, n).real();
    if (!(diag > 0.0)) continue;
    double interference = 0.0;
    for (int m = 0; m < total_users; ++m)
      if (m != n) interference += channel.gamma[m] * std::norm(c(n, m));
    const double psi = p_u * interference + mag.col(n).dot(noise);
    const double signal = p_u * channel.gamma[n] * diag * diag;
    out[n] = std::log2(1.0 + signal / psi);
  }
  return out;
}

double mrc_rate_user(const ChannelRealization& channel, const ResolutionProfile& profile,
                     double p_u, int n) {
  if (n < 0 || n >= channel.n_users()) throw std::out_of_range("mrc_rate_user: user index");
  return mrc_rates(channel, profile, p_u, n + 1)[n];
}

namespace {

void check_closed_form(std::span<const double> gamma, int n, double lambda_p, int n_rf,
                       const char* who) {
  if (n < 0 || n >= static_cast<int>(gamma.size()))
    throw std::out_of_range(std::string(who) + ": user index");
  if (!(lambda_p >= 0.0)) throw std::domain_error(std::string(who) + ": lambda_p must be >= 0");
  if (n_rf <= 0) throw std::domain_error(std::string(who) + ": n_rf must be positive");
}

double others_sum(std::span<const double> gamma, int n) {
  double s = 0.0;
  for (std::size_t k = 0; k < gamma.size(); ++k)
    if (static_cast<int>(k) != n) s += gamma[k];
  return s;
}

double interference_sum(const MultiCellScene& scene, int n) {
  double s = others_sum(scene.gamma, n);
  for (const auto& cell : scene.interfering)
    for (double g : cell) s += g;
  return s;
}

// Shared body of the exact-lambda closed forms.
double theorem_rate(double gamma_n, double interference, double lambda_p, double p_u,
                    double alpha, int n_rf) {
  const double e = std::exp(-lambda_p);
  const double mean_l = lambda_p + e;
  const double numerator = p_u * gamma_n * alpha * (lambda_p * lambda_p + 2.0 * lambda_p + 2.0 * e);
  const double eta =
      mean_l * (1.0 + 2.0 * p_u * gamma_n * (1.0 - alpha) + mean_l * (p_u / n_rf) * interference);
  return std::log2(1.0 + numerator / eta);
}

}  // namespace

double analytic_rate_alpha(std::span<const double> gamma, int n, double lambda_p, double p_u,
                           double alpha, int n_rf) {
  check_closed_form(gamma, n, lambda_p, n_rf, "analytic_rate");
  return theorem_rate(gamma[n], others_sum(gamma, n), lambda_p, p_u, alpha, n_rf);
}

double analytic_rate(std::span<const double> gamma, int n, double lambda_p, double p_u, int bits,
                     int n_rf) {
  if (bits < 1) throw std::domain_error("analytic_rate: bits must be >= 1");
  return analytic_rate_alpha(gamma, n, lambda_p, p_u, alpha(bits), n_rf);
}

double analytic_rate_largepath_alpha(std::span<const double> gamma, int n, double lambda_p,
                                     double p_u, double alpha, int n_rf) {
  check_closed_form(gamma, n, lambda_p, n_rf, "analytic_rate_largepath");
  const double g = gamma[n];
  const double numerator = p_u * g * alpha * (lambda_p + 2.0);
  const double denominator =
      1.0 + p_u * (2.0 * g * (1.0 - alpha) + lambda_p / n_rf * others_sum(gamma, n));
  return std::log2(1.0 + numerator / denominator);
}

double analytic_rate_largepath(std::span<const double> gamma, int n, double lambda_p, double p_u,
                               int bits, int n_rf) {
  if (bits < 1) throw std::domain_error("analytic_rate_largepath: bits must be >= 1");
  return analytic_rate_largepath_alpha(gamma, n, lambda_p, p_u, alpha(bits), n_rf);
}

void MultiCellScene::validate() const {
  auto ok = [](double g) { return g > 0.0 && std::isfinite(g); };
  if (gamma.empty() || !std::all_of(gamma.begin(), gamma.end(), ok))
    throw std::invalid_argument("MultiCellScene: own-cell gains must be positive");
  for (const auto& cell : interfering)
    if (!std::all_of(cell.begin(), cell.end(), ok))
      throw std::invalid_argument("MultiCellScene: interfering gains must be positive");
}

double analytic_rate_multicell_alpha(const MultiCellScene& scene, int n, double lambda_p,
                                     double p_u, double alpha, int n_rf) {
  scene.validate();
  check_closed_form(scene.gamma, n, lambda_p, n_rf, "analytic_rate_multicell");
  return theorem_rate(scene.gamma[n], interference_sum(scene, n), lambda_p, p_u, alpha, n_rf);
}

double analytic_rate_multicell(const MultiCellScene& scene, int n, double lambda_p, double p_u,
                               int bits, int n_rf) {
  if (bits < 1) throw std::domain_error("analytic_rate_multicell: bits must be >= 1");
  return analytic_rate_multicell_alpha(scene, n, lambda_p, p_u, alpha(bits), n_rf);
}

RateReport analytic_report(std::span<const double> gamma, double lambda_p, double p_u, int bits,
                           int n_rf) {
  std::vector<double> rates(gamma.size());
  for (std::size_t n = 0; n < gamma.size(); ++n)
    rates[n] = analytic_rate(gamma, static_cast<int>(n), lambda_p, p_u, bits, n_rf);
  return RateReport::from_users(std::move(rates), MetricKind::analytic);
}

std::string_view to_string(AsymptoticKind kind) {
  switch (kind) {
    case AsymptoticKind::inf_bits: return "inf_bits";
    case AsymptoticKind::inf_power: return "inf_power";
    case AsymptoticKind::inf_power_inf_antennas: return "inf_power_inf_antennas";
    case AsymptoticKind::large_array_limit: return "large_array_limit";
    case AsymptoticKind::power_scaling: return "power_scaling";
  }
  return "unknown";
}

AsymptoticKind parse_asymptotic_kind(std::string_view name) {
  for (auto k : {AsymptoticKind::inf_bits, AsymptoticKind::inf_power,
                 AsymptoticKind::inf_power_inf_antennas, AsymptoticKind::large_array_limit,
                 AsymptoticKind::power_scaling})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown asymptotic kind '" + std::string(name) + "'");
}

namespace {

template <class T>
T need(const std::optional<T>& v, const char* field, AsymptoticKind kind) {
  if (!v)
    throw std::invalid_argument("asymptotic_rate(" + std::string(to_string(kind)) + "): missing " +
                                field);
  return *v;
}

double need_gamma_n(const AsymptoticParams& p, AsymptoticKind kind) {
  if (p.n < 0 || p.n >= static_cast<int>(p.gamma.size()))
    throw std::invalid_argument("asymptotic_rate(" + std::string(to_string(kind)) +
                                "): gamma/n missing or out of range");
  return p.gamma[p.n];
}

}  // namespace

double asymptotic_rate(AsymptoticKind kind, const AsymptoticParams& p) {
  switch (kind) {
    case AsymptoticKind::inf_bits: {
      const double g = need_gamma_n(p, kind);
      const double lam = need(p.lambda_p, "lambda_p", kind);
      const double pu = need(p.p_u, "p_u", kind);
      const int nrf = need(p.n_rf, "n_rf", kind);
      const double e = std::exp(-lam);
      const double mean_l = lam + e;
      const double num = pu * g * (lam * lam + 2.0 * lam + 2.0 * e);
      const double den = mean_l * (1.0 + mean_l * (pu / nrf) * others_sum(p.gamma, p.n));
      return std::log2(1.0 + num / den);
    }
    case AsymptoticKind::inf_power: {
      const double g = need_gamma_n(p, kind);
      const double lam = need(p.lambda_p, "lambda_p", kind);
      const double a = need(p.alpha, "alpha", kind);
      const int nrf = need(p.n_rf, "n_rf", kind);
      const double e = std::exp(-lam);
      const double mean_l = lam + e;
      const double num = g * a * (lam * lam + 2.0 * lam + 2.0 * e);
      const double den = mean_l * (2.0 * g * (1.0 - a) + mean_l / nrf * others_sum(p.gamma, p.n));
      if (!(den > 0.0)) throw std::domain_error("asymptotic_rate(inf_power): limit diverges");
      return std::log2(1.0 + num / den);
    }
    case AsymptoticKind::inf_power_inf_antennas: {
      const double lam = need(p.lambda_p, "lambda_p", kind);
      const double a = need(p.alpha, "alpha", kind);
      if (!(a < 1.0))
        throw std::domain_error("asymptotic_rate(inf_power_inf_antennas): diverges for alpha = 1");
      const double e = std::exp(-lam);
      return std::log2(1.0 + a * (lam * lam + 2.0 * lam + 2.0 * e) / (2.0 * (1.0 - a) * (lam + e)));
    }
    case AsymptoticKind::large_array_limit: {
      const double g = need_gamma_n(p, kind);
      const double a = need(p.alpha, "alpha", kind);
      const double eps = need(p.epsilon, "epsilon", kind);
      const double tau = need(p.tau, "tau", kind);
      const int nr = need(p.n_antennas, "n_antennas", kind);
      const double den = 2.0 * g * (1.0 - a) + eps / tau * others_sum(p.gamma, p.n);
      if (!(den > 0.0)) throw std::domain_error("asymptotic_rate(large_array_limit): diverges");
      return std::log2(1.0 + g * a * (eps * nr + 2.0) / den);
    }
    case AsymptoticKind::power_scaling: {
      const double g = need_gamma_n(p, kind);
      const double a = need(p.alpha, "alpha", kind);
      const double eps = need(p.epsilon, "epsilon", kind);
      const double tau = need(p.tau, "tau", kind);
      const double es = need(p.e_s, "e_s", kind);
      return std::log2(1.0 + es * g * a * eps / tau);
    }
  }
  throw std::invalid_argument("asymptotic_rate: unknown kind");
}

}  // namespace radc
