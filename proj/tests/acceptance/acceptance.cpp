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

// Acceptance gate. Prints one PASS/FAIL line per criterion; the exit status is
// the number of failed criteria (capped at 100).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radc/allocator.hpp"
#include "radc/channel.hpp"
#include "radc/config.hpp"
#include "radc/ergodic.hpp"
#include "radc/metrics.hpp"
#include "radc/power.hpp"
#include "radc/quantizer.hpp"

using namespace radc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---- 1 --------------------------------------------------------------------

Outcome table_one() {
  double worst = 0.0;
  std::string detail;
  for (int b = 1; b <= 5; ++b) {
    const double d = lloyd_max_distortion(b);
    worst = std::max(worst, std::abs(d - kDistortionTable[b - 1]));
    detail += fmt("b%.0f=", b) + fmt("%.6f ", d);
  }
  return {worst <= 1e-3, detail + fmt("max|err|=%.2e (tol 1e-3)", worst)};
}

// ---- 2 --------------------------------------------------------------------

Outcome table_two() {
  const double expected[3][7] = {{40.78, 28.20, 26.46, 4.46, 0.10, 0, 0},
                                 {32.10, 16.32, 25.54, 19.36, 6.54, 0.14, 0},
                                 {19.40, 7.46, 18.42, 28.54, 22.58, 3.48, 0.12}};
  SystemConfig c = SystemConfig::reference(256);
  c.tx_power_dbm = 20.0;
  ErgodicOptions o;
  o.strategy = Strategy::revmmsqe;
  o.blocks = 200;
  o.trials_per_block = 100;
  o.seed = 2024;
  o.threads = 0;

  double worst = 0.0;
  std::string detail;
  for (int bbar = 1; bbar <= 3; ++bbar) {
    c.constraint_bits = bbar;
    const auto r = ergodic_rate_mc(c, o);
    detail += fmt("bbar=%.0f:", bbar);
    for (int b = 0; b <= 6; ++b) {
      const double pct = 100.0 * r.bit_histogram[b];
      worst = std::max(worst, std::abs(pct - expected[bbar - 1][b]));
      if (b <= 4) detail += fmt(" %.2f", pct);
    }
    detail += "  ";
  }
  return {worst <= 5.0, detail + fmt("max dev %.2f pp (tol 5)", worst)};
}

// ---- 3 --------------------------------------------------------------------

Outcome theorem_one() {
  bool ok = true;
  std::string detail;
  double worst256 = 0.0, worst128 = 0.0;
  for (int nr : {128, 256}) {
    const double tol = nr == 256 ? 0.05 : 0.10;
    for (int b : {1, 2, 12}) {
      for (double pu : {-10.0, 0.0, 10.0, 20.0}) {
        SystemConfig c = SystemConfig::reference(nr);
        c.constraint_bits = b;
        c.tx_power_dbm = pu;
        ErgodicOptions o;
        o.strategy = Strategy::fixed;
        o.blocks = 1000;
        o.trials_per_block = 20;
        o.seed = 77;
        o.threads = 0;
        const auto r = ergodic_rate_mc(c, o);
        const double e = rel(r.sum_rate, r.analytic_sum_rate);
        (nr == 256 ? worst256 : worst128) = std::max(nr == 256 ? worst256 : worst128, e);
        if (e > tol) {
          ok = false;
          detail += "Nr=" + std::to_string(nr) + ",b=" + std::to_string(b) + fmt(",pu=%.0f", pu) +
                    fmt(": %.2f%% ", 100.0 * e);
        }
      }
    }
  }
  return {ok, fmt("max rel gap Nr=256 %.2f%% (tol 5%%), ", 100 * worst256) +
                  fmt("Nr=128 %.2f%% (tol 10%%)", 100 * worst128) +
                  (detail.empty() ? "" : "; over tolerance: " + detail)};
}

// ---- 4 --------------------------------------------------------------------

Outcome kkt() {
  Rng rng(4);
  std::uniform_int_distribution<int> nrf(2, 64), bits(1, 5);
  std::normal_distribution<double> spread(0.0, 3.0);
  std::uniform_real_distribution<double> logp(-3.0, 3.0);
  double worst_power = 0.0, worst_stat = 0.0;
  const int instances = 10000;
  for (int t = 0; t < instances; ++t) {
    const int n = nrf(rng);
    const int bbar = bits(rng);
    const double p = std::pow(10.0, logp(rng));
    std::vector<double> g(n);
    for (auto& x : g) x = std::exp(spread(rng));
    const bool rev = t % 2 == 1;
    const auto b = rev ? revmmsqe_real_solution(g, bbar) : mmsqe_real_solution(g, p, bbar);

    double power = 0.0;
    for (double v : b) power += std::exp2(v);
    worst_power = std::max(worst_power, rel(power, n * std::exp2(bbar)));

    // (2 k sigma^2)^{1/3} 2^{-b_i} is the same for every chain.
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
      const double sigma = rev ? p * g[i] : 1.0 + p * g[i];
      s[i] = std::cbrt(2.0 * kHighResDistortion * sigma) * std::exp2(-b[i]);
    }
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    worst_stat = std::max(worst_stat, (*hi - *lo) / *hi);
  }
  return {worst_power <= 1e-9 && worst_stat <= 1e-9,
          fmt("%.0f instances: power-equality rel err %.2e", instances, worst_power) +
              fmt(", stationarity spread %.2e (tol 1e-9)", worst_stat)};
}

// ---- 5 --------------------------------------------------------------------

// Total MSQE under the distortion model the relaxed problem is posed in:
// (pi sqrt3 / 2) 2^{-2b} sigma^2 for every integer b, including b = 0.
double total_msqe(const std::vector<int>& b, const std::vector<double>& sigma) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += beta_analytic(b[i]) * sigma[i];
  return s;
}

// Calls f on every vector in {0..max_bits}^n.
void enumerate(int n, int max_bits, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> b(n, 0);
  while (true) {
    f(b);
    int i = 0;
    while (i < n && b[i] == max_bits) b[i++] = 0;
    if (i == n) return;
    ++b[i];
  }
}

Outcome algorithm_one() {
  Rng rng(5);
  std::uniform_int_distribution<int> nrf(2, 6), bits(1, 3);
  const int instances = 1000;
  int feasible = 0, near = 0, done = 0;
  int near_by[2] = {0, 0}, count_by[2] = {0, 0};
  double worst = 0.0;
  while (done < instances) {
    const int n = nrf(rng);
    const int bbar = bits(rng);
    SystemConfig c = SystemConfig::reference(2 * n);
    c.tx_power_dbm = 20.0;
    const auto drop = sample_user_drop(c, rng);
    const auto g = row_gains(sample_beamspace_channel(c, drop, rng));
    if (std::all_of(g.begin(), g.end(), [](double x) { return x == 0.0; })) continue;
    const double p = c.tx_power_mw();
    const bool rev = done % 2 == 1;
    ++done;

    const auto alloc = allocate_from_gains(g, p, bbar, rev ? Strategy::revmmsqe : Strategy::mmsqe);
    std::vector<double> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = rev ? p * g[i] : 1.0 + p * g[i];

    const std::int64_t budget = static_cast<std::int64_t>(n) << bbar;
    if (alloc.adc_power_units() <= budget) ++feasible;

    double best = std::numeric_limits<double>::infinity();
    enumerate(n, 6, [&](const std::vector<int>& b) {
      if (adc_power_units(b) <= budget) best = std::min(best, total_msqe(b, sigma));
    });
    const double gap = total_msqe(alloc.integer_bits, sigma) / best - 1.0;
    worst = std::max(worst, gap);
    ++count_by[rev];
    if (gap <= 0.05) {
      ++near;
      ++near_by[rev];
    }
  }
  const bool ok = feasible == instances && near >= 0.95 * instances;
  return {ok, fmt("feasible %.0f/", feasible) + fmt("%.0f; gap<=5%% on ", instances) +
                  fmt("%.1f%% (need 95%%) ", 100.0 * near / instances) +
                  fmt("[mmsqe %.1f%%, ", 100.0 * near_by[0] / count_by[0]) +
                  fmt("revmmsqe %.1f%%], ", 100.0 * near_by[1] / count_by[1]) +
                  fmt("worst gap %.1f%%", 100.0 * worst)};
}

// ---- 6 --------------------------------------------------------------------

Outcome prop_two() {
  Rng rng(6);
  std::uniform_int_distribution<int> nrf(2, 5), users(1, 4), bits(1, 2);
  std::normal_distribution<double> re(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> snr(-5.0, -3.0);
  const int instances = 500;
  int agree = 0;
  for (int t = 0; t < instances; ++t) {
    const int n = nrf(rng), k = users(rng), bbar = bits(rng);
    Eigen::MatrixXcd g(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) g(i, j) = {re(rng), re(rng)};
    const std::vector<double> gamma(k, 1.0);
    const auto ch = make_channel(g, gamma);
    const auto rg = row_gains(ch);
    const double p = std::pow(10.0, snr(rng)) / *std::max_element(rg.begin(), rg.end());

    const std::int64_t budget = static_cast<std::int64_t>(n) << bbar;
    double best_gmi = -1.0, best_obj = std::numeric_limits<double>::infinity();
    double obj_at_gmi = 0.0;
    enumerate(n, 4, [&](const std::vector<int>& b) {
      if (adc_power_units(b) > budget) return;
      const auto prof = ResolutionProfile::from_bits(b, BetaModel::analytic);
      const auto rates = gmi_all(ch, prof, p);
      const double s = std::accumulate(rates.begin(), rates.end(), 0.0);
      double obj = 0.0;
      for (int i = 0; i < n; ++i) obj += p * prof.beta[i] * rg[i];
      if (s > best_gmi) {
        best_gmi = s;
        obj_at_gmi = obj;
      }
      best_obj = std::min(best_obj, obj);
    });
    if (obj_at_gmi - best_obj <= 1e-9 * best_obj) ++agree;
  }
  return {agree >= 0.95 * instances,
          fmt("agreement %.1f%% of ", 100.0 * agree / instances) +
              fmt("%.0f instances (need 95%%)", instances)};
}

// ---- 7 --------------------------------------------------------------------

Outcome prop_four() {
  Rng rng(7);
  SystemConfig c = SystemConfig::reference(64);
  std::uniform_real_distribution<double> snr(-4.0, -2.0);
  std::uniform_int_distribution<int> bits(1, 3);
  const int instances = 1000;
  int within = 0;
  double worst = 0.0;
  double worst_by_bits[4] = {0, 0, 0, 0};
  for (int t = 0; t < instances; ++t) {
    const auto drop = sample_user_drop(c, rng);
    const auto ch = sample_beamspace_channel(c, drop, rng);
    const auto g = row_gains(ch);
    const int bbar = bits(rng);
    const double p = std::pow(10.0, snr(rng)) / *std::max_element(g.begin(), g.end());
    const auto prof = ResolutionProfile::from_real_bits(revmmsqe_real_solution(g, bbar));
    const double exact = capacity(ch, prof, p);
    const double approx = capacity_low_snr_revba(g, p, bbar);
    const double e = rel(approx, exact);
    worst = std::max(worst, e);
    worst_by_bits[bbar] = std::max(worst_by_bits[bbar], e);
    if (e <= 0.05) ++within;
  }
  return {within == instances,
          fmt("within 5%% on %.0f/", within) + fmt("%.0f channels, ", instances) +
              fmt("worst %.2f%% ", 100 * worst) +
              fmt("(bbar=1 %.2f%%, ", 100 * worst_by_bits[1]) +
              fmt("bbar=2 %.2f%%, ", 100 * worst_by_bits[2]) +
              fmt("bbar=3 %.2f%%)", 100 * worst_by_bits[3])};
}

// ---- 8 --------------------------------------------------------------------

Outcome energy_headline() {
  SystemConfig c = SystemConfig::reference(256);
  c.tx_power_dbm = 20.0;
  ErgodicOptions o;
  o.blocks = 100;
  o.trials_per_block = 100;
  o.seed = 88;
  o.threads = 0;
  bool ordered = true;
  double ratio = 0.0;
  std::string detail;
  for (int bbar = 1; bbar <= 4; ++bbar) {
    c.constraint_bits = bbar;
    o.strategy = Strategy::fixed;
    const auto fixed = ergodic_rate_mc(c, o);
    o.strategy = Strategy::revmmsqe;
    const auto rev = ergodic_rate_mc(c, o);
    const double ee_f = energy_efficiency(fixed.sum_rate, c.bandwidth_hz, fixed.power(c.n_antennas, o.power).total);
    const double ee_r = energy_efficiency(rev.sum_rate, c.bandwidth_hz, rev.power(c.n_antennas, o.power).total);
    if (rev.sum_rate < fixed.sum_rate) ordered = false;
    detail += fmt("bbar=%.0f ", bbar) + fmt("R %.2f/", rev.sum_rate) + fmt("%.2f ", fixed.sum_rate);
    if (bbar == 4) ratio = ee_r / ee_f;
  }
  const bool ok = ordered && ratio >= 1.10 && ratio <= 1.35;
  return {ok, fmt("EE ratio at bbar=4: %.3f (band [1.10, 1.35]); ", ratio) +
                  "rate rev>=fixed at all bbar<=4: " + (ordered ? "yes" : "no") + "; " + detail};
}

// ---- 9 --------------------------------------------------------------------

Outcome asymptotics() {
  const std::vector<double> gamma{2e-3, 5e-4, 1e-3, 3e-4, 8e-4, 1.5e-3, 2.5e-4, 6e-4};
  const int n = 0;
  const double lambda = 25.6;
  const int n_rf = 128;
  const double pu = 100.0;

  AsymptoticParams ap;
  ap.gamma = gamma;
  ap.n = n;
  ap.lambda_p = lambda;
  ap.p_u = pu;
  ap.n_rf = n_rf;
  const double e1 = rel(analytic_rate(gamma, n, lambda, pu, 12, n_rf),
                        asymptotic_rate(AsymptoticKind::inf_bits, ap));

  ap.alpha = alpha(2);
  const double e2 = rel(analytic_rate(gamma, n, lambda, 1e12, 2, n_rf),
                        asymptotic_rate(AsymptoticKind::inf_power, ap));

  const double eps = 0.1, tau = 0.5, es = 10.0;
  const int nr = 10000;
  ap.epsilon = eps;
  ap.tau = tau;
  ap.e_s = es;
  const double eq26 = analytic_rate_largepath(gamma, n, eps * nr, es / (tau * nr), 2,
                                              static_cast<int>(tau * nr));
  const double e3 = rel(eq26, asymptotic_rate(AsymptoticKind::power_scaling, ap));

  const bool ok = e1 <= 1e-3 && e2 <= 1e-3 && e3 <= 5e-3;
  return {ok, fmt("b=12 vs inf-bits %.2e (tol 1e-3), ", e1) +
                  fmt("pu=1e12 vs inf-power %.2e (tol 1e-3), ", e2) +
                  fmt("Nr=1e4 power scaling %.2e (tol 5e-3)", e3)};
}

// ---- 10 -------------------------------------------------------------------

Outcome multicell() {
  const std::vector<double> gamma{2e-3, 5e-4, 1e-3, 3e-4};
  MultiCellScene scene{gamma, {}};
  bool exact = true;
  for (int n = 0; n < 4; ++n)
    for (double pu : {0.1, 1.0, 100.0})
      exact = exact && analytic_rate_multicell(scene, n, 25.6, pu, 2, 128) ==
                           analytic_rate(gamma, n, 25.6, pu, 2, 128);

  SystemConfig c = SystemConfig::reference(256);
  c.constraint_bits = 2;
  c.tx_power_dbm = 20.0;
  ErgodicOptions o;
  o.strategy = Strategy::fixed;
  o.blocks = 400;
  o.trials_per_block = 25;
  o.seed = 1010;
  o.threads = 0;
  double worst = 0.0;
  std::string detail;
  for (int cells : {1, 2}) {
    c.n_interfering_cells = cells;
    const auto r = ergodic_rate_mc(c, o);
    const double e = rel(r.sum_rate, r.analytic_sum_rate);
    worst = std::max(worst, e);
    detail += fmt("Nc=%.0f: ", cells) + fmt("MC %.3f vs ", r.sum_rate) +
              fmt("closed form %.3f; ", r.analytic_sum_rate);
  }
  return {exact && worst <= 0.07, std::string("Nc=0 bit-exact: ") + (exact ? "yes" : "no") + "; " +
                                      detail + fmt("max rel gap %.2f%% (tol 7%%)", 100 * worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "Lloyd-Max distortion table", 10, table_one},
      {2, "bit histogram of revmmsqe (N_r=256, 20 dBm)", 300, table_two},
      {3, "fixed-ADC Monte Carlo vs closed-form rate", 300, theorem_one},
      {4, "KKT power equality and stationarity", 600, kkt},
      {5, "integer mapping vs exhaustive search", 600, algorithm_one},
      {6, "low-SNR GMI vs revised-MSQE ranking", 600, prop_two},
      {7, "low-SNR revised-allocation capacity approximation", 600, prop_four},
      {8, "energy-efficiency headline at bbar=4", 600, energy_headline},
      {9, "asymptotic limits", 600, asymptotics},
      {10, "multi-cell closed form and Monte Carlo", 600, multicell},
  };

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s [%d] %s: %s [%.1f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return std::min(failed, 100);
}
