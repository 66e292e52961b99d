/*
   Copyright 2026 The difftower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Timings of the main kernels at desk scale.

#include <benchmark/benchmark.h>

#include <random>

#include "difftower/expint.hpp"
#include "difftower/format.hpp"
#include "difftower/riccati.hpp"
#include "difftower/sampling.hpp"
#include "difftower/solver.hpp"
#include "difftower/syntax.hpp"
#include "difftower/valuation.hpp"

using namespace difftower;

namespace {

const Elem X = Elem::generator(1);
const Elem Y = Elem::generator(2);

SampleShape shape(int degree) {
    SampleShape s;
    s.degree = degree;
    s.coeff_degree = 1;
    s.coeff_bound = 4;
    return s;
}

Tower exp_tower() { return Tower::rational("x").adjoin("y", Y); }

void BM_TowerArithmetic(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int degree = static_cast<int>(state.range(0));
    const Elem a = random_elem(rng, 2, shape(degree)), b = random_nonzero_elem(rng, 2, shape(degree));
    for (auto _ : state) benchmark::DoNotOptimize(a * b + a / b);
}
BENCHMARK(BM_TowerArithmetic)->DenseRange(1, 4);

void BM_Derive(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const Tower t = exp_tower();
    const Elem a = random_elem(rng, 2, shape(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(derive(a, t));
}
BENCHMARK(BM_Derive)->DenseRange(1, 4);

void BM_DPoly(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(d_poly(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_DPoly)->DenseRange(2, 8, 2);

void BM_RightDivide(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const Tower t = exp_tower();
    const int order = static_cast<int>(state.range(0));
    std::vector<Elem> c1, c2;
    for (int i = 0; i <= order; ++i) c1.push_back(random_nonzero_elem(rng, 2, shape(1)));
    for (int i = 0; i <= 1; ++i) c2.push_back(random_nonzero_elem(rng, 2, shape(1)));
    const LinDiffOp l = mul(LinDiffOp(c1), LinDiffOp(c2), t), d(c2);
    for (auto _ : state) benchmark::DoNotOptimize(right_divide(l, d, t));
}
BENCHMARK(BM_RightDivide)->DenseRange(1, 3);

void BM_RelationLattice(benchmark::State& state) {
    std::vector<QFrac> as;
    for (long i = 1; i <= state.range(0); ++i) as.push_back(to_qfrac(Elem(mpq_class(1, i + 1)) / (X - i)));
    for (auto _ : state) benchmark::DoNotOptimize(relation_lattice(as));
}
BENCHMARK(BM_RelationLattice)->DenseRange(1, 5, 2);

void BM_Verdict(benchmark::State& state) {
    const LinDiffOp ops[] = {LinDiffOp({-1, 0, 1}), LinDiffOp({-X, 0, 1}), LinDiffOp({-1 / (2 * X), 1}),
                             LinDiffOp({0, 1 / X, 1})};
    const LinDiffOp& l = ops[state.range(0)];
    for (auto _ : state) benchmark::DoNotOptimize(solvability_verdict(l));
}
BENCHMARK(BM_Verdict)->DenseRange(0, 3);

void BM_ParseRoundTrip(benchmark::State& state) {
    std::mt19937_64 rng(4);
    Scope s;
    s.tower = exp_tower();
    const std::string text = format(random_elem(rng, 2, shape(3)), s.tower);
    for (auto _ : state) benchmark::DoNotOptimize(parse_element(text, s));
}
BENCHMARK(BM_ParseRoundTrip);

void BM_OrderLemma(benchmark::State& state) {
    const Tower t = Tower::rational("x").adjoin("y", Y * Y / (1 + X * Y));
    SamplingOptions o;
    o.samples = 20;
    o.degree = 3;
    o.coeff_degree = 0;
    for (auto _ : state) benchmark::DoNotOptimize(assert_order_monotone(t, o));
}
BENCHMARK(BM_OrderLemma);

}  // namespace

BENCHMARK_MAIN();
