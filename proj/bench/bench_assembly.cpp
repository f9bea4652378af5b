// Copyright 2026 The gaitforge Authors
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

// Serial vs. OpenMP assembly of the gait residual, its Jacobian and the
// constraint Hessian at the default guess of the prismatic monopod.

#include <benchmark/benchmark.h>

#include <map>

#include "gaitforge/io/config.hpp"
#include "gaitforge/rootsearch/rootsearch.hpp"
#include "gaitforge/transcription/residuals.hpp"

namespace gf = gaitforge;
using gf::transcription::AssemblyOptions;

namespace {

struct Fixture {
  gf::transcription::GaitProblem qp, act;
  gf::numerics::Vector a, b, lambda;
};

const Fixture& fixture(int N) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  auto cfg = gf::io::default_config("prismatic-monopod");
  cfg.N = N;
  Fixture f;
  f.qp = cfg.quasi_passive_problem();
  f.a = gf::rootsearch::build_guess_from_simulation(f.qp, cfg.candidates, 0.3);
  f.act = gf::transcription::actuated_problem(f.qp, 0.3);
  f.b = gf::transcription::to_actuated(f.qp.layout, f.act.layout, f.a);
  f.lambda = gf::numerics::Vector::Ones(f.act.layout.n_h());
  return cache.emplace(N, std::move(f)).first->second;
}

void BM_Residuals(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const AssemblyOptions opt{state.range(1) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(gf::transcription::residuals(f.qp, f.a, 0.0, opt));
}

void BM_Jacobian(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const AssemblyOptions opt{state.range(1) != 0};
  for (auto _ : state) benchmark::DoNotOptimize(gf::transcription::residual_jacobian(f.qp, f.a, 0.0, opt));
}

void BM_ConstraintHessian(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const AssemblyOptions opt{state.range(1) != 0};
  for (auto _ : state)
    benchmark::DoNotOptimize(gf::transcription::constraint_hessian(f.act, f.b, f.lambda, 0.5, opt));
}

// args: N, parallel
#define GF_ARGS ArgsProduct({{10, 40}, {0, 1}})->ArgNames({"N", "parallel"})->Unit(benchmark::kMicrosecond)
BENCHMARK(BM_Residuals)->GF_ARGS;
BENCHMARK(BM_Jacobian)->GF_ARGS;
BENCHMARK(BM_ConstraintHessian)->GF_ARGS;

}  // namespace

BENCHMARK_MAIN();
