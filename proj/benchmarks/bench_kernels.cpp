/**
 * Copyright 2026 The fockhaf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "fockhaf/fockhaf.hpp"

namespace {

fockhaf::SymmetricMatrix random_symmetric(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d;
  fockhaf::SymmetricMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, fockhaf::Complex(d(gen), d(gen)) / 2.0);
  return a;
}

void BM_LhafFast(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::lhaf_fast(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LhafFast)->DenseRange(10, 30, 2)->Unit(benchmark::kMillisecond);

void BM_LhafFastThreads(benchmark::State& state) {
  const auto a = random_symmetric(24, 2);
  fockhaf::KernelOptions o;
  o.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::lhaf_fast(a, o));
}
BENCHMARK(BM_LhafFastThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_HafFast(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::haf_fast(a));
}
BENCHMARK(BM_HafFast)->DenseRange(10, 24, 2)->Unit(benchmark::kMillisecond);

void BM_LhafBruteforce(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::lhaf_bruteforce(a));
}
BENCHMARK(BM_LhafBruteforce)->DenseRange(4, 14, 2)->Unit(benchmark::kMillisecond);

void BM_LhafInteger(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  fockhaf::SymmetricMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, (i + 2 * j) % 3);
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::lhaf_integer(a));
}
BENCHMARK(BM_LhafInteger)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_Permanent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(5);
  std::normal_distribution<double> d;
  fockhaf::CMatrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = fockhaf::Complex(d(gen), d(gen));
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::permanent(w));
}
BENCHMARK(BM_Permanent)->DenseRange(6, 18, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
