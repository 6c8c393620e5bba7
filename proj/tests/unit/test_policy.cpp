#include "test_util.hpp"

#include "ccmdp/builtin.hpp"
#include "ccmdp/enumeration.hpp"
#include "ccmdp/errors.hpp"
#include "ccmdp/instance_gen.hpp"
#include "ccmdp/lp_builder.hpp"
#include "ccmdp/lp_solver.hpp"
#include "ccmdp/oracle.hpp"
#include "ccmdp/policy.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccmdp;

TEST_CASE("extraction normalizes rows with mass and falls back to uniform") {
    Mdp m = make_mdp(2, 3, 1);
    for (int a = 0; a < 3; ++a) {
        m.p(0, a, 0) = 1.0;
        m.p(1, a, 1) = 1.0;
    }
    const AugmentedMdp aug = augment_binary(m);
    OccupationMeasure rho = make_occupation(1, aug.num_aug_states(), 3);
    rho.at(0, aug.index_of(0, 0), 0) = 0.2;
    rho.at(0, aug.index_of(0, 0), 1) = 0.3;
    rho.at(0, aug.index_of(0, 0), 2) = 0.5;
    rho.terminal[aug.index_of(0, 0)] = 1.0;

    const MarkovPolicy policy = extract_policy(aug, rho);
    CHECK(policy.prob(0, aug.index_of(0, 0), 0) == doctest::Approx(0.2));
    CHECK(policy.prob(0, aug.index_of(0, 0), 1) == doctest::Approx(0.3));
    CHECK(policy.prob(0, aug.index_of(0, 0), 2) == doctest::Approx(0.5));
    for (int a = 0; a < 3; ++a)
        CHECK(policy.prob(0, aug.index_of(1, 0), a) == doctest::Approx(1.0 / 3.0));
    CHECK(policy_rows_stochastic(policy));
}

TEST_CASE("extracted policies reproduce the occupation measure they came from") {
    for (std::uint64_t seed : {7ull, 19ull, 28ull}) {
        const RandomInstance inst = random_tiny_instance(seed);
        const AugmentedMdp aug = augment_binary(inst.mdp);
        const LpProblem lp = build_problem1_lp(aug, inst.delta);
        const LpSolution sol = solve(lp);
        if (sol.status != SolveStatus::Optimal) continue;
        const OccupationMeasure rho = occupation_from_values(aug, lp, sol.values);
        const OccupationMeasure replay = forward_propagate(aug.mdp, extract_policy(aug, rho));
        for (int t = 0; t < rho.horizon; ++t)
            for (int x = 0; x < rho.num_states; ++x)
                for (int a = 0; a < rho.num_actions; ++a)
                    CHECK(std::fabs(replay.at(t, x, a) - rho.at(t, x, a)) <= 1e-8);
        for (int x = 0; x < rho.num_states; ++x)
            CHECK(std::fabs(replay.terminal[x] - rho.terminal[x]) <= 1e-8);
    }
}

TEST_CASE("lifted policy matches the flag-clear rows while no alarm is seen") {
    const RandomInstance inst = random_tiny_instance(9);
    const AugmentedMdp aug = augment_binary(inst.mdp);
    const MarkovPolicy inner =
        test::random_policy(inst.mdp.horizon, aug.num_aug_states(), inst.mdp.num_actions, 3);
    const HistoryPolicy lifted = lift_policy(inner, aug);

    const auto alarm = alarm_mask(inst.mdp);
    std::vector<int> prefix = {inst.mdp.initial_state};
    for (int t = 0; t < inst.mdp.horizon; ++t) {
        // extend with non-alarm states only
        int clean = 0;
        while (alarm[clean]) ++clean;
        if (t > 0) prefix.push_back(clean);
        const int x = prefix.back();
        const auto dist = lifted.distribution(t, prefix);
        for (int a = 0; a < inst.mdp.num_actions; ++a)
            CHECK(dist[a] == inner.prob(t, aug.index_of(x, 0), a));
    }
}

TEST_CASE("appendix optimum lifts to the published history policy") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const LpProblem lp = build_problem1_lp(aug, 0.5);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    const MarkovPolicy extracted = extract_policy(aug, occupation_from_values(aug, lp, sol.values));
    const HistoryPolicy lifted = lift_policy(extracted, aug);

    const int clean_history[] = {0, 1, 3};
    const int alarm_history[] = {0, 2, 3};
    CHECK(lifted.distribution(2, clean_history)[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
    CHECK(lifted.distribution(2, alarm_history)[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("lifted policies preserve joint path distributions") {
    for (std::uint64_t seed : {1ull, 13ull, 26ull}) {
        const RandomInstance inst = random_tiny_instance(seed);
        const Mdp& m = inst.mdp;
        for (AugMode mode : {AugMode::Binary, AugMode::Counting}) {
            const AugmentedMdp aug =
                mode == AugMode::Binary ? augment_binary(m) : augment_counting(m);
            const MarkovPolicy inner =
                test::random_policy(m.horizon, aug.num_aug_states(), m.num_actions, seed + 100);
            const HistoryPolicy lifted = lift_policy(inner, aug);
            const auto alarm = alarm_mask(m);

            // base-path probability under the lifted policy must equal the
            // probability of the consistent augmented path under the inner one
            test::for_each_path(m, [&](const std::vector<int>& states,
                                       const std::vector<int>& actions) {
                const double base_prob = path_probability(m, lifted, states, actions);
                double aug_prob = 1.0;
                int y = alarm[states[0]] ? 1 : 0;
                for (int t = 0; t < m.horizon; ++t) {
                    const int from = aug.index_of(states[t], y);
                    aug_prob *= inner.prob(t, from, actions[t]);
                    const int yp = alarm[states[t + 1]]
                                       ? (mode == AugMode::Binary ? 1 : std::min(y + 1, m.horizon))
                                       : y;
                    aug_prob *= aug.mdp.p(from, actions[t], aug.index_of(states[t + 1], yp));
                    y = yp;
                    if (aug_prob == 0.0) break;
                }
                CHECK(std::fabs(base_prob - aug_prob) <= 1e-9);
            });
        }
    }
}

TEST_CASE("chance constraint transfers from the lifted policy to the flag marginal") {
    const RandomInstance inst = random_tiny_instance(23);
    const Mdp& m = inst.mdp;
    const AugmentedMdp aug = augment_binary(m);
    const MarkovPolicy inner =
        test::random_policy(m.horizon, aug.num_aug_states(), m.num_actions, 77);
    const HistoryPolicy lifted = lift_policy(inner, aug);

    const double by_enumeration = alarm_event_probability(m, lifted, 1);
    const OccupationMeasure rho = forward_propagate(aug.mdp, inner);
    double flag_mass = 0.0;
    for (int x = 0; x < m.num_states; ++x) flag_mass += rho.terminal[aug.index_of(x, 1)];
    CHECK(std::fabs(by_enumeration - flag_mass) <= 1e-9);
}

TEST_CASE("history evaluation rejects out-of-range states") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const HistoryPolicy lifted =
        lift_policy(test::point_policy(3, aug.num_aug_states(), 2, {}), aug);
    const int bad[] = {0, 9};
    CHECK_THROWS_AS(lifted.distribution(1, bad), InputError);
    CHECK_THROWS_AS(lift_policy(test::point_policy(3, 4, 2, {}), aug), InputError);
}
