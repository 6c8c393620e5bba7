#include "test_util.hpp"

#include "ccmdp/builtin.hpp"
#include "ccmdp/errors.hpp"
#include "ccmdp/instance_gen.hpp"
#include "ccmdp/lp_builder.hpp"
#include "ccmdp/lp_solver.hpp"
#include "ccmdp/oracle.hpp"
#include "ccmdp/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace ccmdp;

TEST_CASE("deterministic chain gives a point-mass pmf and the exact reward") {
    Mdp m = make_mdp(3, 1, 2);
    m.p(0, 0, 1) = 1.0;
    m.p(1, 0, 2) = 1.0;
    m.p(2, 0, 2) = 1.0;
    m.rewards[0][0] = 1.5;
    m.rewards[1][1] = 2.5;
    m.terminal_reward[2] = 3.0;
    m.alarm_states = {2};
    const AugmentedMdp aug = augment_binary(m);
    const HistoryPolicy policy =
        lift_policy(test::point_policy(2, aug.num_aug_states(), 1, {}), aug);

    SimConfig cfg;
    cfg.num_trajectories = 500;
    cfg.record_paths = true;
    const SimStats stats = simulate(m, policy, cfg);
    CHECK(stats.alarm_count_pmf[1] == doctest::Approx(1.0));
    CHECK(stats.mean_reward == doctest::Approx(7.0));
    CHECK(stats.alarmed_trajectories == 500);
    CHECK(stats.clean_trajectories == 0);
    CHECK_FALSE(stats.mean_state_clean.has_value());
    REQUIRE(stats.mean_state_alarmed.has_value());
    CHECK((*stats.mean_state_alarmed)[2] == doctest::Approx(2.0));
    CHECK(stats.paths.size() == 500);

    // absent conditional column renders as an empty cell
    const std::string csv = conditional_means_csv(stats);
    CHECK(csv.find("2,2,\n") != std::string::npos);
}

TEST_CASE("appendix optimal policy simulates to its analytic value") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const MarkovPolicy inner = test::augmented_policy(aug, [](int, int x, int y, int a) {
        if (x != 3) return a == 0 ? 1.0 : 0.0;
        const double risky = y == 1 ? 1.0 : 2.0 / 3.0;
        return a == 1 ? risky : 1.0 - risky;
    });
    const HistoryPolicy policy = lift_policy(inner, aug);

    SimConfig cfg;
    cfg.num_trajectories = 1000000;
    cfg.seed = 0;
    const SimStats stats = simulate(m, policy, cfg);
    CHECK(std::fabs(empirical_chance(stats, 1) - 0.5) <= 0.002);
    CHECK(std::fabs(stats.mean_reward - 4.0) <= 0.02);
}

TEST_CASE("same configuration reproduces identical statistics") {
    // the gap example has genuinely random alarm counts, so distinct seeds
    // must produce distinct empirical laws
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const HistoryPolicy policy =
        lift_policy(test::random_policy(m.horizon, aug.num_aug_states(), m.num_actions, 5), aug);

    SimConfig cfg;
    cfg.num_trajectories = 20000;
    cfg.seed = 1234;
    cfg.record_paths = true;
    const SimStats a = simulate(m, policy, cfg);
    const SimStats b = simulate(m, policy, cfg);
    CHECK(a.alarm_count_pmf == b.alarm_count_pmf);
    CHECK(a.mean_reward == b.mean_reward);
    CHECK(a.paths == b.paths);
    CHECK(alarm_pmf_csv(a) == alarm_pmf_csv(b));
    CHECK(paths_csv(a) == paths_csv(b));
    CHECK(conditional_means_csv(a) == conditional_means_csv(b));

    cfg.seed = 4321;
    const SimStats c = simulate(m, policy, cfg);
    CHECK(a.alarm_count_pmf != c.alarm_count_pmf);
}

TEST_CASE("empirical alarm-count pmf converges to the counting-chain marginal") {
    const Mdp m = builtin::section5_mdp();
    const AugmentedMdp bin = augment_binary(m);
    const LpProblem lp = build_problem1_lp(bin, 0.5);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    const MarkovPolicy policy = extract_policy(bin, occupation_from_values(bin, lp, sol.values));

    // exact law of the alarm count: run the same decision rule on the
    // counting augmentation and read the terminal counter marginal
    const AugmentedMdp cnt = augment_counting(m);
    const MarkovPolicy on_counting = test::augmented_policy(cnt, [&](int t, int x, int y, int a) {
        return policy.prob(t, bin.index_of(x, std::min(y, 1)), a);
    });
    const OccupationMeasure exact = forward_propagate(cnt.mdp, on_counting);
    std::vector<double> exact_pmf(m.horizon + 1, 0.0);
    for (int y = 0; y <= m.horizon; ++y)
        for (int x = 0; x < m.num_states; ++x) exact_pmf[y] += exact.terminal[cnt.index_of(x, y)];

    const HistoryPolicy lifted = lift_policy(policy, bin);
    double averaged_tv = 0.0;
    const int num_seeds = 5;
    for (std::uint64_t seed = 0; seed < num_seeds; ++seed) {
        SimConfig cfg;
        cfg.num_trajectories = 100000;
        cfg.seed = seed;
        const SimStats stats = simulate(m, lifted, cfg);
        double tv = 0.0;
        for (int k = 0; k <= m.horizon; ++k)
            tv += std::fabs(stats.alarm_count_pmf[k] - exact_pmf[k]);
        averaged_tv += 0.5 * tv;
    }
    CHECK(averaged_tv / num_seeds <= 0.01);
}

TEST_CASE("empirical chance tails") {
    const RandomInstance inst = random_tiny_instance(44);
    const AugmentedMdp aug = augment_counting(inst.mdp);
    const HistoryPolicy policy = lift_policy(
        test::random_policy(inst.mdp.horizon, aug.num_aug_states(), inst.mdp.num_actions, 2), aug);
    SimConfig cfg;
    cfg.num_trajectories = 2000;
    const SimStats stats = simulate(inst.mdp, policy, cfg);
    CHECK(empirical_chance(stats, 0) == 1.0);
    for (int i = 1; i <= inst.mdp.horizon; ++i)
        CHECK(empirical_chance(stats, i) <= empirical_chance(stats, i - 1) + 1e-12);
    CHECK_THROWS_AS(empirical_chance(stats, inst.mdp.horizon + 1), InputError);
}

TEST_CASE("csv schemas") {
    const RandomInstance inst = random_tiny_instance(3);
    const AugmentedMdp aug = augment_binary(inst.mdp);
    const HistoryPolicy policy = lift_policy(
        test::random_policy(inst.mdp.horizon, aug.num_aug_states(), inst.mdp.num_actions, 8), aug);
    SimConfig cfg;
    cfg.num_trajectories = 100;
    cfg.record_paths = true;
    const SimStats stats = simulate(inst.mdp, policy, cfg);

    std::istringstream pmf(alarm_pmf_csv(stats));
    std::string line;
    std::getline(pmf, line);
    CHECK(line == "count,probability");
    int rows = 0;
    while (std::getline(pmf, line)) ++rows;
    CHECK(rows == inst.mdp.horizon + 1);

    std::istringstream paths(paths_csv(stats));
    std::getline(paths, line);
    CHECK(line == "trajectory,t,state");
    rows = 0;
    while (std::getline(paths, line)) ++rows;
    CHECK(rows == 100 * (inst.mdp.horizon + 1));

    std::istringstream means(conditional_means_csv(stats));
    std::getline(means, line);
    CHECK(line == "t,mean_alarm,mean_noalarm");
}
