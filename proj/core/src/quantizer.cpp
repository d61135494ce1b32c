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

#include "radc/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace radc {

double beta(int bits) {
  if (bits <= 0) return 1.0;
  if (bits <= 5) return kDistortionTable[bits - 1];
  return beta_analytic(static_cast<double>(bits));
}

double beta_analytic(double bits) { return kHighResDistortion * std::exp2(-2.0 * bits); }

double alpha(int bits) { return 1.0 - beta(bits); }

double msqe(double sigma_sq, int bits) {
  if (!(sigma_sq >= 0.0)) throw std::domain_error("msqe: variance must be non-negative");
  return beta(bits) * sigma_sq;
}

namespace {

double model_beta(int bits, BetaModel model) {
  if (bits <= 0) return 1.0;
  if (model == BetaModel::table) return beta(bits);
  return std::min(1.0, beta_analytic(bits));
}

}  // namespace

ResolutionProfile ResolutionProfile::from_bits(std::span<const int> bits, BetaModel model) {
  ResolutionProfile p;
  p.bits.reserve(bits.size());
  p.alpha.reserve(bits.size());
  p.beta.reserve(bits.size());
  for (int b : bits) {
    if (b < 0) throw std::invalid_argument("ResolutionProfile: negative bit count");
    const double be = model_beta(b, model);
    p.bits.push_back(b);
    p.beta.push_back(be);
    p.alpha.push_back(1.0 - be);
  }
  return p;
}

ResolutionProfile ResolutionProfile::uniform(std::size_t n_rf, int bits, BetaModel model) {
  const std::vector<int> b(n_rf, bits);
  return from_bits(b, model);
}

ResolutionProfile ResolutionProfile::from_real_bits(std::span<const double> bits) {
  ResolutionProfile p;
  for (double b : bits) {
    const double bp = std::max(b, 0.0);  // -inf (zero-gain row) also lands here
    const double be = std::min(1.0, beta_analytic(bp));
    p.bits.push_back(bp);
    p.beta.push_back(be);
    p.alpha.push_back(1.0 - be);
  }
  return p;
}

ResolutionProfile ResolutionProfile::ideal(std::size_t n_rf) {
  ResolutionProfile p;
  p.bits.assign(n_rf, std::numeric_limits<double>::infinity());
  p.alpha.assign(n_rf, 1.0);
  p.beta.assign(n_rf, 0.0);
  return p;
}

std::vector<double> quantization_noise_covariance(const ChannelRealization& channel,
                                                  const ResolutionProfile& profile, double p_u) {
  if (profile.size() != static_cast<std::size_t>(channel.n_rf()))
    throw std::invalid_argument("quantization_noise_covariance: profile length != n_rf");
  const auto gains = row_gains(channel);
  std::vector<double> out(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i)
    out[i] = profile.alpha[i] * profile.beta[i] * (p_u * gains[i] + 1.0);
  return out;
}

double lloyd_max_distortion(int bits, int n_points) {
  if (bits < 1 || bits > 5) throw std::domain_error("lloyd_max_distortion: bits must be in 1..5");
  if (n_points < 1000) throw std::domain_error("lloyd_max_distortion: grid too coarse");

  constexpr double half_width = 10.0;
  const double step = 2.0 * half_width / (n_points - 1);

  // Prefix sums of w, w x, w x^2 with w the Gaussian density on the grid.
  std::vector<double> cw(n_points + 1, 0.0), cwx(n_points + 1, 0.0), cwx2(n_points + 1, 0.0);
  for (int j = 0; j < n_points; ++j) {
    const double x = -half_width + j * step;
    const double w = std::exp(-0.5 * x * x);
    cw[j + 1] = cw[j] + w;
    cwx[j + 1] = cwx[j] + w * x;
    cwx2[j + 1] = cwx2[j] + w * x * x;
  }

  const int levels = 1 << bits;
  std::vector<double> c(levels);
  for (int k = 0; k < levels; ++k) c[k] = -3.0 + 6.0 * (k + 0.5) / levels;
  std::vector<int> edge(levels + 1);
  edge.front() = 0;
  edge.back() = n_points;

  auto first_index_at_or_above = [&](double t) {
    const double pos = std::ceil((t + half_width) / step);
    return static_cast<int>(std::clamp(pos, 0.0, static_cast<double>(n_points)));
  };

  constexpr int kMaxIterations = 1'000'000;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (int k = 1; k < levels; ++k) edge[k] = first_index_at_or_above(0.5 * (c[k - 1] + c[k]));
    double moved = 0.0;
    for (int k = 0; k < levels; ++k) {
      const double w = cw[edge[k + 1]] - cw[edge[k]];
      if (w <= 0.0) continue;
      const double next = (cwx[edge[k + 1]] - cwx[edge[k]]) / w;
      moved = std::max(moved, std::abs(next - c[k]));
      c[k] = next;
    }
    if (moved < 1e-13) {
      double err = 0.0;
      for (int k = 0; k < levels; ++k) {
        const double w = cw[edge[k + 1]] - cw[edge[k]];
        const double wx = cwx[edge[k + 1]] - cwx[edge[k]];
        const double wx2 = cwx2[edge[k + 1]] - cwx2[edge[k]];
        err += wx2 - 2.0 * c[k] * wx + c[k] * c[k] * w;
      }
      return err / cwx2[n_points];
    }
  }
  throw std::runtime_error("lloyd_max_distortion: no fixed point after " +
                           std::to_string(kMaxIterations) + " iterations");
}

}  // namespace radc
