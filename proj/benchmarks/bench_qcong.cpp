// Copyright 2026 The qcong Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run a subset with --benchmark_filter, e.g. ./qcong_bench --benchmark_filter=Type1

#include <benchmark/benchmark.h>

#include "qcong/experiments.hpp"
#include "qcong/lattice.hpp"
#include "qcong/modcore.hpp"
#include "qcong/parametrize.hpp"

namespace ex = qcong::experiments;
namespace mc = qcong::modcore;

namespace {

void BM_SqrtModP(benchmark::State& state) {
  const qcong::i128 p = 1000000007;
  qcong::i128 n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::sqrt_mod_p(n, p));
    n = n * 5 % p;
  }
}
BENCHMARK(BM_SqrtModP);

void BM_RootsModK(benchmark::State& state) {
  std::int64_t k = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::roots_mod_k(1, 1, 1000000 + k));
    k = k % 1000 + 1;
  }
}
BENCHMARK(BM_RootsModK);

void BM_Factorize(benchmark::State& state) {
  const qcong::i128 n = static_cast<qcong::i128>(1000000007) * 998244353;
  for (auto _ : state) benchmark::DoNotOptimize(mc::factorize(n));
}
BENCHMARK(BM_Factorize);

void BM_HeegnerPoints(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcong::lattice::heegner_points(state.range(0)));
}
BENCHMARK(BM_HeegnerPoints)->Arg(1009)->Arg(100003);

void BM_CosetReps(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcong::lattice::coset_reps(state.range(0)));
}
BENCHMARK(BM_CosetReps)->Arg(210)->Arg(2310);

void BM_VerifyPara1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcong::parametrize::verify_para1(1, 5, 3, state.range(0)));
}
BENCHMARK(BM_VerifyPara1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Type1(benchmark::State& state) {
  const auto X = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ex::type1(X, X, 20, 1, 1, ex::bump(1, 2), ex::bump(-1, 1), ex::Theta{},
                                       static_cast<unsigned>(state.range(1))));
}
BENCHMARK(BM_Type1)->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);

void BM_Equidist(benchmark::State& state) {
  const auto bins = ex::uniform_intervals(10);
  for (auto _ : state) benchmark::DoNotOptimize(ex::equidist(state.range(0), 1, 1, bins));
}
BENCHMARK(BM_Equidist)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_KernelHeegner(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ex::kernel_heegner(state.range(0), 2 * state.range(0), 5, qcong::Rational(8)));
}
BENCHMARK(BM_KernelHeegner)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_KernelLowertriang(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ex::kernel_lowertriang(1, 2, 2, 2, 1, state.range(0), qcong::Rational(4), qcong::Rational(1)));
}
BENCHMARK(BM_KernelLowertriang)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_X2Y3(benchmark::State& state) {
  const auto X = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ex::x2y3_typeI2(X, X / 20, 10, 1, 1, ex::bump(1, 1.5), ex::bump(1, 1.5),
                                             ex::bump(1, 1.5), 200, 30));
}
BENCHMARK(BM_X2Y3)->Arg(40000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
