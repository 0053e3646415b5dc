// Microbenchmarks for the solver hot paths: success-count convolutions, the
// exact LP behind per-set contracts, equilibrium enumeration, and the
// closed-form constructions. Run via the `benchmarks` target; sizes are
// chosen so a full run stays under a minute.

#include "anoncontract/equilibrium.hpp"
#include "anoncontract/generators.hpp"
#include "anoncontract/instance.hpp"
#include "anoncontract/ll_optimal.hpp"
#include "anoncontract/noll.hpp"
#include "anoncontract/probability.hpp"
#include "anoncontract/scalar.hpp"
#include "anoncontract/uniform.hpp"
#include "anoncontract/analysis.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>

using namespace anoncontract;

namespace {

Instance random_instance(int n, Mode mode) {
    const Instance exact = gen_random(0x5eedull + static_cast<std::uint64_t>(n), n,
                                      Rational(1, 10), Rational(9, 10));
    return instance_in_mode(exact, mode);
}

// Distinct probabilities by construction, so the calibrated contracts below
// never hit the singularity guard.
Instance ladder_instance(int n) {
    std::vector<Agent> agents;
    agents.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        agents.push_back({Scalar::exact(i, n + 1), Scalar::exact(i, 2 * (n + 1))});
    return Instance(std::move(agents), Mode::Exact);
}

void bm_success_dist(benchmark::State& state, Mode mode) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, mode);
    const AgentSet all = AgentSet::full(n);
    for (auto _ : state) benchmark::DoNotOptimize(success_dist(inst, all));
}

void bm_set_lp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, Mode::Exact);
    const AgentSet all = AgentSet::full(n);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_ll_for_set(inst, all));
}

void bm_ll_optimal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, Mode::Exact);
    for (auto _ : state) benchmark::DoNotOptimize(optimal_ll_anonymous(inst));
}

void bm_enumerate_pne(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, Mode::Exact);
    const AnonymousContract w = AnonymousContract::uniform(n, Scalar::exact(1, 2));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_pne(inst, w));
}

void bm_dynamics(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, Mode::Exact);
    const AnonymousContract w = AnonymousContract::uniform(n, Scalar::exact(1, 2));
    const AgentSet start(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            best_response_dynamics(inst, w, start, UpdatePolicy::LowestIndexFirst, 7));
}

void bm_solve_uniform(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, Mode::Exact);
    for (auto _ : state) benchmark::DoNotOptimize(solve_uniform(inst));
}

void bm_log_contract(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = ladder_instance(n);
    for (auto _ : state) benchmark::DoNotOptimize(log_contract(inst));
}

void bm_full_extraction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = ladder_instance(n);
    for (auto _ : state) benchmark::DoNotOptimize(full_extraction(inst));
}

void bm_gap_report(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Instance inst = random_instance(n, Mode::Exact);
    for (auto _ : state) benchmark::DoNotOptimize(gap_report(inst));
}

} // namespace

BENCHMARK_CAPTURE(bm_success_dist, exact, Mode::Exact)->Arg(12)->Arg(20);
BENCHMARK_CAPTURE(bm_success_dist, float, Mode::Float)->Arg(12)->Arg(20);
BENCHMARK(bm_set_lp)->Arg(6)->Arg(10);
BENCHMARK(bm_ll_optimal)->Arg(6)->Arg(10);
BENCHMARK(bm_enumerate_pne)->Arg(8)->Arg(12);
BENCHMARK(bm_dynamics)->Arg(10)->Arg(14);
BENCHMARK(bm_solve_uniform)->Arg(100)->Arg(1000);
BENCHMARK(bm_log_contract)->Arg(100)->Arg(1000);
BENCHMARK(bm_full_extraction)->Arg(8)->Arg(12);
BENCHMARK(bm_gap_report)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
