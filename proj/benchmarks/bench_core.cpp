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

#include <benchmark/benchmark.h>

#include "radc/allocator.hpp"
#include "radc/channel.hpp"
#include "radc/config.hpp"
#include "radc/metrics.hpp"
#include "radc/quantizer.hpp"

namespace {

using namespace radc;

ChannelRealization draw(int antennas, std::uint64_t seed) {
  const SystemConfig c = SystemConfig::reference(antennas);
  Rng rng(seed);
  const auto drop = sample_user_drop(c, rng);
  return sample_beamspace_channel(c, drop, rng);
}

void BM_ChannelDraw(benchmark::State& state) {
  const SystemConfig c = SystemConfig::reference(static_cast<int>(state.range(0)));
  Rng rng(1);
  const auto drop = sample_user_drop(c, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sample_beamspace_channel(c, drop, rng));
}
BENCHMARK(BM_ChannelDraw)->Arg(64)->Arg(256);

void BM_Allocate(benchmark::State& state) {
  const auto ch = draw(static_cast<int>(state.range(0)), 2);
  const auto gains = row_gains(ch);
  const auto strategy = static_cast<Strategy>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(allocate_from_gains(gains, 100.0, 2, strategy));
}
BENCHMARK(BM_Allocate)
    ->Args({256, static_cast<int>(Strategy::mmsqe)})
    ->Args({256, static_cast<int>(Strategy::revmmsqe)})
    ->Args({256, static_cast<int>(Strategy::mixed)});

void BM_Capacity(benchmark::State& state) {
  const auto ch = draw(static_cast<int>(state.range(0)), 3);
  const auto prof = ResolutionProfile::uniform(ch.n_rf(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(capacity(ch, prof, 100.0));
}
BENCHMARK(BM_Capacity)->Arg(64)->Arg(256);

void BM_Gmi(benchmark::State& state) {
  const auto ch = draw(static_cast<int>(state.range(0)), 4);
  const auto prof = ResolutionProfile::uniform(ch.n_rf(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(gmi_all(ch, prof, 100.0));
}
BENCHMARK(BM_Gmi)->Arg(64)->Arg(256);

void BM_MrcRates(benchmark::State& state) {
  const auto ch = draw(static_cast<int>(state.range(0)), 5);
  const auto prof = ResolutionProfile::uniform(ch.n_rf(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(mrc_rates(ch, prof, 100.0));
}
BENCHMARK(BM_MrcRates)->Arg(64)->Arg(256);

void BM_LloydMax(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lloyd_max_distortion(bits, 40001));
}
BENCHMARK(BM_LloydMax)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
