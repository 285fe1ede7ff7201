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

fockhaf::CMatrix haar_unitary(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  fockhaf::CMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = fockhaf::Complex(d(gen), d(gen));
  Eigen::HouseholderQR<fockhaf::CMatrix> qr(z);
  return qr.householderQ();
}

fockhaf::AmplitudeSpec spec(int modes, int photons) {
  std::mt19937_64 gen(11);
  fockhaf::AmplitudeSpec s;
  s.m.assign(modes, photons);
  s.n.assign(modes, photons);
  s.alpha = fockhaf::CVector::Constant(modes, fockhaf::Complex(0.3, -0.2));
  s.u = haar_unitary(modes, gen);
  s.uprime = haar_unitary(modes, gen);
  s.lambda = fockhaf::RVector::LinSpaced(modes, -0.6, 0.7);
  return s;
}

// Total photon number 2 * modes * photons.
void BM_Amplitude(benchmark::State& state) {
  const auto s = spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::amplitude(s));
}
BENCHMARK(BM_Amplitude)->Args({2, 1})->Args({2, 3})->Args({3, 2})->Args({3, 3})->Args({4, 2})
    ->Unit(benchmark::kMillisecond);

void BM_AmplitudeEngineReuse(benchmark::State& state) {
  const auto s = spec(3, 2);
  const fockhaf::AmplitudeEngine engine(fockhaf::GaussianUnitary::of(s), s.n);
  for (auto _ : state) benchmark::DoNotOptimize(engine(s.m));
}
BENCHMARK(BM_AmplitudeEngineReuse)->Unit(benchmark::kMillisecond);

void BM_OracleAmplitude(benchmark::State& state) {
  const auto s = spec(3, 2);
  fockhaf::OracleOptions o;
  o.cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fockhaf::oracle_amplitude(s, o));
}
BENCHMARK(BM_OracleAmplitude)->Arg(18)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  fockhaf::VibronicModel m;
  const int l = 3;
  m.omega_in = fockhaf::RVector::LinSpaced(l, 0.004, 0.008);
  m.omega_final = fockhaf::RVector::LinSpaced(l, 0.0035, 0.0085);
  std::mt19937_64 gen(12);
  m.duschinsky = haar_unitary(l, gen).real();
  Eigen::HouseholderQR<fockhaf::RMatrix> qr(m.duschinsky);
  m.duschinsky = qr.householderQ();
  m.displacement = fockhaf::RVector::LinSpaced(l, -0.8, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fockhaf::spectrum(m, {0, 0, 0}, static_cast<int>(state.range(0)), 1e-10));
  }
}
BENCHMARK(BM_Spectrum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
