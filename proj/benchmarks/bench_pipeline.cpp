#include "ccmdp/augmentation.hpp"
#include "ccmdp/builtin.hpp"
#include "ccmdp/instance_gen.hpp"
#include "ccmdp/lp_builder.hpp"
#include "ccmdp/lp_solver.hpp"
#include "ccmdp/oracle.hpp"
#include "ccmdp/policy.hpp"
#include "ccmdp/simulator.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace ccmdp;

static void BM_AugmentCounting(benchmark::State& state) {
    const Mdp m = builtin::section5_mdp();
    for (auto _ : state) benchmark::DoNotOptimize(augment_counting(m));
}
BENCHMARK(BM_AugmentCounting);

static void BM_SolveAppendix(benchmark::State& state) {
    const AugmentedMdp aug = augment_binary(builtin::appendix_mdp());
    for (auto _ : state) benchmark::DoNotOptimize(solve(build_problem1_lp(aug, 0.5)));
}
BENCHMARK(BM_SolveAppendix);

static void BM_SolveDriftChainP1(benchmark::State& state) {
    const AugmentedMdp aug = augment_binary(builtin::section5_mdp());
    const LpProblem lp = build_problem1_lp(aug, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(solve(lp));
}
BENCHMARK(BM_SolveDriftChainP1)->Unit(benchmark::kMillisecond);

static void BM_SolveDriftChainP2(benchmark::State& state) {
    const Mdp m = builtin::section5_mdp();
    const AugmentedMdp aug = augment_counting(m);
    std::vector<double> deltas(m.horizon);
    for (int i = 1; i <= m.horizon; ++i) deltas[i - 1] = std::pow(0.5, i);
    const LpProblem lp = build_problem2_lp(aug, deltas);
    for (auto _ : state) benchmark::DoNotOptimize(solve(lp));
}
BENCHMARK(BM_SolveDriftChainP2)->Unit(benchmark::kMillisecond);

static void BM_PathLpTiny(benchmark::State& state) {
    const RandomInstance inst = random_tiny_instance(7);
    const double deltas[1] = {inst.delta};
    for (auto _ : state) benchmark::DoNotOptimize(solve_path_lp_status(inst.mdp, deltas));
}
BENCHMARK(BM_PathLpTiny);

static void BM_SimulateDriftChain(benchmark::State& state) {
    const Mdp m = builtin::section5_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const LpProblem lp = build_problem1_lp(aug, 0.5);
    const LpSolution sol = solve(lp);
    const MarkovPolicy policy = extract_policy(aug, occupation_from_values(aug, lp, sol.values));
    const HistoryPolicy lifted = lift_policy(policy, aug);
    SimConfig cfg;
    cfg.num_trajectories = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(m, lifted, cfg));
    state.SetItemsProcessed(state.iterations() * cfg.num_trajectories);
}
BENCHMARK(BM_SimulateDriftChain)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
