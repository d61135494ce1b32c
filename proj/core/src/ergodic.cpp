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

#include "radc/ergodic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "radc/channel.hpp"

namespace radc {

std::string_view to_string(SwitchingMode m) {
  return m == SwitchingMode::slow ? "slow" : "coherence";
}

SwitchingMode parse_switching_mode(std::string_view name) {
  if (name == "coherence") return SwitchingMode::coherence;
  if (name == "slow") return SwitchingMode::slow;
  throw std::invalid_argument("unknown switching mode '" + std::string(name) + "'");
}

std::string_view to_string(RateMetric m) {
  switch (m) {
    case RateMetric::mrc: return "mrc";
    case RateMetric::capacity: return "capacity";
    case RateMetric::gmi: return "gmi";
  }
  return "unknown";
}

RateMetric parse_rate_metric(std::string_view name) {
  if (name == "mrc") return RateMetric::mrc;
  if (name == "capacity") return RateMetric::capacity;
  if (name == "gmi") return RateMetric::gmi;
  throw std::invalid_argument("unknown rate metric '" + std::string(name) + "'");
}

PowerReport ErgodicResult::power(int n_antennas, const PowerModel& model) const {
  return receiver_power_from_means(n_antennas, mean_active, mean_adc_w, mean_switching_w, model);
}

RateReport ErgodicResult::report(RateMetric metric) const {
  if (metric == RateMetric::capacity) return RateReport::from_sum(sum_rate, MetricKind::capacity);
  return RateReport::from_users(per_user_rate,
                                metric == RateMetric::gmi ? MetricKind::gmi : MetricKind::mrc_mc);
}

namespace {

constexpr std::uint64_t kFixedDropStream = std::numeric_limits<std::uint64_t>::max();

struct BlockResult {
  std::vector<double> user_rate_sum;
  double sum_rate_sum = 0.0;
  std::array<std::int64_t, kMaxBits + 1> hist{};
  std::int64_t active = 0;
  double adc_w = 0.0;
  double switching_w = 0.0;
  std::vector<int> first_bits;
  std::vector<int> last_bits;
  double analytic = 0.0;
  bool budget_ok = true;
};

bool charges_switching(Strategy s) { return s == Strategy::mmsqe || s == Strategy::revmmsqe; }

struct Drops {
  UserDrop own;
  std::vector<UserDrop> cells;
};

Drops draw_drops(const SystemConfig& config, Rng& rng) {
  Drops d;
  d.own = sample_user_drop(config, rng);
  for (int c = 0; c < config.n_interfering_cells; ++c)
    d.cells.push_back(sample_interfering_drop(config, rng));
  return d;
}

double block_analytic(const SystemConfig& config, const Drops& drops) {
  const double a = alpha(config.constraint_bits);
  const double p = config.tx_power_mw();
  MultiCellScene scene{drops.own.gamma, {}};
  for (const auto& c : drops.cells) scene.interfering.push_back(c.gamma);
  double s = 0.0;
  for (int n = 0; n < config.n_users; ++n)
    s += analytic_rate_multicell_alpha(scene, n, config.lambda_p(), p, a, config.n_rf);
  return s;
}

BlockResult run_block(const SystemConfig& config, const ErgodicOptions& opt, int trials,
                      std::uint64_t block, const std::optional<Drops>& shared) {
  Rng rng(derive_seed(opt.seed, block));
  const Drops drops = shared ? *shared : draw_drops(config, rng);
  const double p = config.tx_power_mw();
  const double lambda = config.lambda_p();

  const PathSupport support = sample_support(config.n_rf, config.n_users, lambda, rng);
  std::vector<PathSupport> cell_support;
  for (std::size_t c = 0; c < drops.cells.size(); ++c)
    cell_support.push_back(sample_support(config.n_rf, config.n_users, lambda, rng));

  BlockResult out;
  out.user_rate_sum.assign(config.n_users, 0.0);
  out.analytic = block_analytic(config, drops);

  const bool slow = opt.switching == SwitchingMode::slow &&
                    (opt.strategy == Strategy::mmsqe || opt.strategy == Strategy::revmmsqe);
  std::optional<BitAllocation> held;
  if (slow && opt.slow_input == SlowInput::expected_gains)
    held = slow_switching_allocation(support, drops.own.gamma, p, config.constraint_bits,
                                     opt.strategy);
  if (opt.strategy == Strategy::fixed) held = fixed_allocation(config.n_rf, config.constraint_bits);

  std::vector<int> prev;
  std::vector<ChannelRealization> others(drops.cells.size());
  for (int t = 0; t < trials; ++t) {
    ChannelRealization own = sample_complex_gains(support, drops.own.gamma, rng);
    for (std::size_t c = 0; c < drops.cells.size(); ++c)
      others[c] = sample_complex_gains(cell_support[c], drops.cells[c].gamma, rng);

    if (!held || (!slow && opt.strategy != Strategy::fixed))
      held = allocate_from_gains(row_gains(own), p, config.constraint_bits, opt.strategy);
    const BitAllocation& alloc = *held;
    if (!alloc.within_budget()) out.budget_ok = false;

    const auto profile = ResolutionProfile::from_bits(alloc.integer_bits, opt.beta_model);
    const ChannelRealization full = others.empty() ? own : stack_users(own, others);

    double sum = 0.0;
    if (opt.metric == RateMetric::capacity) {
      sum = capacity(full, profile, p);
    } else {
      std::vector<double> r;
      if (opt.metric == RateMetric::mrc) {
        r = mrc_rates(full, profile, p, config.n_users);
      } else {
        r = gmi_all(full, profile, p);
        r.resize(config.n_users);
      }
      for (int n = 0; n < config.n_users; ++n) {
        out.user_rate_sum[n] += r[n];
        sum += r[n];
      }
    }
    out.sum_rate_sum += sum;

    for (int b : alloc.integer_bits) {
      out.hist[std::clamp(b, 0, kMaxBits)] += 1;
      if (b > 0) ++out.active;
      out.adc_w += adc_power(b, opt.power);
    }
    if (charges_switching(opt.strategy)) {
      if (t == 0) {
        out.first_bits = alloc.integer_bits;
      } else {
        for (std::size_t i = 0; i < prev.size(); ++i)
          out.switching_w += switching_power(alloc.integer_bits[i], prev[i], opt.power);
      }
      prev = alloc.integer_bits;
    }
  }
  out.last_bits = prev;
  return out;
}

}  // namespace

ErgodicResult ergodic_rate_mc(const SystemConfig& config, const ErgodicOptions& options) {
  config.validate();
  options.power.validate();
  if (options.trials_per_block < 0)
    throw std::invalid_argument("ergodic_rate_mc: trials per block must be >= 0");
  const int trials = options.trials_per_block > 0 ? options.trials_per_block : config.block_len;
  if (options.blocks <= 0) throw std::invalid_argument("ergodic_rate_mc: blocks must be positive");
  if (trials <= 0) throw std::invalid_argument("ergodic_rate_mc: trials must be positive");
  if (options.fixed_drop && static_cast<int>(options.fixed_drop->gamma.size()) != config.n_users)
    throw std::invalid_argument("ergodic_rate_mc: fixed drop size differs from n_users");

  std::optional<Drops> shared;
  if (options.fixed_drop || !config.resample_drop_per_block) {
    Rng rng(derive_seed(options.seed, kFixedDropStream));
    Drops d = draw_drops(config, rng);
    if (options.fixed_drop) d.own = *options.fixed_drop;
    shared = std::move(d);
  }

  const int n_blocks = options.blocks;
  std::vector<BlockResult> blocks(n_blocks);
  std::vector<std::exception_ptr> errors(n_blocks);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int b = next++; b < n_blocks; b = next++) {
      try {
        blocks[b] = run_block(config, options, trials, static_cast<std::uint64_t>(b), shared);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n_blocks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ErgodicResult r;
  const double total = static_cast<double>(n_blocks) * trials;
  r.total_trials = static_cast<std::int64_t>(n_blocks) * trials;
  const bool per_user = options.metric != RateMetric::capacity;
  if (per_user) r.per_user_rate.assign(config.n_users, 0.0);

  std::array<std::int64_t, kMaxBits + 1> hist{};
  std::int64_t active = 0;
  double adc = 0.0, sw = 0.0, analytic = 0.0, mean_sum = 0.0;
  std::vector<double> block_means(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    const BlockResult& br = blocks[b];
    if (per_user)
      for (int n = 0; n < config.n_users; ++n) r.per_user_rate[n] += br.user_rate_sum[n];
    block_means[b] = br.sum_rate_sum / trials;
    mean_sum += br.sum_rate_sum;
    for (int k = 0; k <= kMaxBits; ++k) hist[k] += br.hist[k];
    active += br.active;
    adc += br.adc_w;
    sw += br.switching_w;
    analytic += br.analytic;
    if (b > 0 && charges_switching(options.strategy)) {
      const auto& before = blocks[b - 1].last_bits;
      for (std::size_t i = 0; i < br.first_bits.size(); ++i)
        sw += switching_power(br.first_bits[i], before[i], options.power);
    }
    r.within_budget = r.within_budget && br.budget_ok;
  }
  for (double& v : r.per_user_rate) v /= total;
  r.sum_rate = mean_sum / total;
  if (n_blocks > 1) {
    double var = 0.0;
    for (double m : block_means) var += (m - r.sum_rate) * (m - r.sum_rate);
    var /= (n_blocks - 1);
    r.stderr_sum_rate = std::sqrt(var / n_blocks);
  }
  std::int64_t chains = 0;
  for (auto h : hist) chains += h;
  for (int k = 0; k <= kMaxBits; ++k)
    r.bit_histogram[k] = chains > 0 ? static_cast<double>(hist[k]) / chains : 0.0;
  r.mean_active = active / total;
  r.mean_adc_w = adc / total;
  r.mean_switching_w = sw / total;
  r.analytic_sum_rate = analytic / n_blocks;
  return r;
}

}  // namespace radc
