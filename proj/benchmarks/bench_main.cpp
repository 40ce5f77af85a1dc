// Copyright 2026 The opsys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "opsys/dual_space.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/order_norms.hpp"
#include "opsys/section.hpp"
#include "opsys/tower.hpp"

namespace {

using namespace opsys;

void BM_MinOrderNorm(benchmark::State& state) {
  Rng rng(1);
  const OperatorSystem s = random_system(rng, static_cast<int>(state.range(0)), 3);
  const ComplexMatrix v = random_element(s, rng);
  for (auto _ : state) benchmark::DoNotOptimize(min_order_norm(s, v));
}
BENCHMARK(BM_MinOrderNorm)->Arg(2)->Arg(4)->Arg(8);

void BM_MaxOrderNorm(benchmark::State& state) {
  Rng rng(2);
  const OperatorSystem s = random_system(rng, static_cast<int>(state.range(0)), 3);
  const ComplexMatrix v = random_element(s, rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_order_norm(s, v).upper);
}
BENCHMARK(BM_MaxOrderNorm)->Arg(2)->Arg(4);

void BM_SectionMinimize(benchmark::State& state) {
  Rng rng(3);
  const int d = static_cast<int>(state.range(0));
  const OperatorSystem s = random_system(rng, d, 3);
  const ComplexMatrix c = random_hermitian(rng, d);
  for (auto _ : state) benchmark::DoNotOptimize(section_minimize(s, c).lower);
}
BENCHMARK(BM_SectionMinimize)->Arg(3)->Arg(6)->Arg(12);

void BM_DykstraPinned(benchmark::State& state) {
  Rng rng(4);
  const int d = static_cast<int>(state.range(0));
  const ComplexMatrix target =
      random_hermitian(rng, d) + 1.1 * ComplexMatrix::Identity(d, d);
  const FeasibilityProblem p = pinning_problem(target);
  for (auto _ : state) benchmark::DoNotOptimize(dykstra_solve(p).iterations);
}
BENCHMARK(BM_DykstraPinned)->Arg(4)->Arg(8);

void BM_IsCpSolver(benchmark::State& state) {
  Rng rng(5);
  const SystemPtr s = share(random_system(rng, 3, 2));
  const Functional delta = faithful_state(s);
  const MatrixFunctional g = random_hermitian_matrix_functional(s, 2, rng);
  const MatrixFunctional mf = MatrixFunctional::diagonal(2, delta * Complex(20.0)) - g;
  for (auto _ : state) benchmark::DoNotOptimize(is_cp(mf).decision);
}
BENCHMARK(BM_IsCpSolver);

void BM_TowerPairing(benchmark::State& state) {
  Rng rng(6);
  const Tower t = make_tower("matrix-doubling:" + std::to_string(state.range(0)), rng);
  const int last = t.depth() - 1;
  const int dk = t.system(last)->d();
  const FunctionalThread f =
      pullback_thread(t, Functional(t.system(last), random_gaussian(rng, dk, dk)));
  const ElementThread e = make_element_thread(t, 0, random_element(*t.system(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(pairing(t, e, f));
}
BENCHMARK(BM_TowerPairing)->Arg(3)->Arg(4);

void BM_PullbackThread(benchmark::State& state) {
  Rng rng(7);
  const Tower t = make_tower("matrix-doubling:4", rng);
  const Functional fk(t.system(3), random_gaussian(rng, 16, 16));
  for (auto _ : state) benchmark::DoNotOptimize(pullback_thread(t, fk).norm_sup);
}
BENCHMARK(BM_PullbackThread);

}  // namespace

BENCHMARK_MAIN();
