#include "test_util.hpp"

#include "ccmdp/augmentation.hpp"
#include "ccmdp/builtin.hpp"
#include "ccmdp/errors.hpp"
#include "ccmdp/instance_gen.hpp"
#include "ccmdp/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccmdp;

TEST_CASE("binary augmentation without an alarm region never raises the flag") {
    RandomInstance inst = random_tiny_instance(2);
    inst.mdp.alarm_states.clear();
    const Mdp& m = inst.mdp;
    const AugmentedMdp aug = augment_binary(m);

    CHECK(aug.num_aug_states() == 2 * m.num_states);
    for (int x = 0; x < m.num_states; ++x)
        for (int a = 0; a < m.num_actions; ++a)
            for (int xp = 0; xp < m.num_states; ++xp) {
                CHECK(aug.mdp.p(aug.index_of(x, 0), a, aug.index_of(xp, 0)) == m.p(x, a, xp));
                CHECK(aug.mdp.p(aug.index_of(x, 0), a, aug.index_of(xp, 1)) == 0.0);
            }
}

TEST_CASE("appendix start state splits mass onto the flag") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const int from = aug.index_of(0, 0);
    CHECK(aug.mdp.p(from, 0, aug.index_of(2, 1)) == doctest::Approx(0.25));
    CHECK(aug.mdp.p(from, 0, aug.index_of(1, 0)) == doctest::Approx(0.75));
    CHECK(aug.mdp.p(from, 0, aug.index_of(2, 0)) == 0.0);
    CHECK(aug.mdp.p(from, 0, aug.index_of(1, 1)) == 0.0);
}

TEST_CASE("marginalizing the augmented chain over the flag recovers the base chain") {
    // five states with dense eighth-grid rows
    Mdp m = make_mdp(5, 2, 3);
    SplitMix64 rng(404);
    for (int x = 0; x < 5; ++x)
        for (int a = 0; a < 2; ++a) {
            double total = 0.0;
            std::vector<double> w(5);
            for (int xp = 0; xp < 5; ++xp) {
                w[xp] = static_cast<double>(1 + rng.next() % 8);
                total += w[xp];
            }
            for (int xp = 0; xp < 5; ++xp) m.p(x, a, xp) = w[xp] / total;
        }
    m.alarm_states = {2, 4};
    const AugmentedMdp aug = augment_binary(m);

    const MarkovPolicy base_policy = test::random_policy(m.horizon, m.num_states, m.num_actions, 42);
    const MarkovPolicy aug_policy = test::augmented_policy(
        aug, [&](int t, int x, int, int a) { return base_policy.prob(t, x, a); });

    const OccupationMeasure base_rho = forward_propagate(m, base_policy);
    const OccupationMeasure aug_rho = forward_propagate(aug.mdp, aug_policy);

    for (int t = 0; t < m.horizon; ++t)
        for (int x = 0; x < m.num_states; ++x)
            for (int a = 0; a < m.num_actions; ++a) {
                const double marginal =
                    aug_rho.at(t, aug.index_of(x, 0), a) + aug_rho.at(t, aug.index_of(x, 1), a);
                CHECK(marginal == doctest::Approx(base_rho.at(t, x, a)).epsilon(1e-12));
            }
    for (int x = 0; x < m.num_states; ++x) {
        const double marginal =
            aug_rho.terminal[aug.index_of(x, 0)] + aug_rho.terminal[aug.index_of(x, 1)];
        CHECK(marginal == doctest::Approx(base_rho.terminal[x]).epsilon(1e-12));
    }
}

TEST_CASE("counting augmentation freezes without an alarm region") {
    RandomInstance inst = random_tiny_instance(4);
    inst.mdp.alarm_states.clear();
    const AugmentedMdp aug = augment_counting(inst.mdp);
    const Mdp& m = inst.mdp;
    CHECK(aug.num_aug_states() == (m.horizon + 1) * m.num_states);
    for (int x = 0; x < m.num_states; ++x)
        for (int a = 0; a < m.num_actions; ++a)
            for (int xp = 0; xp < m.num_states; ++xp)
                CHECK(aug.mdp.p(aug.index_of(x, 0), a, aug.index_of(xp, 0)) == m.p(x, a, xp));
}

TEST_CASE("a chain that always alarms reaches the saturated counter") {
    // 0 -> 1 -> 1 -> ... with 1 in the alarm region
    Mdp m = make_mdp(2, 1, 3);
    m.p(0, 0, 1) = 1.0;
    m.p(1, 0, 1) = 1.0;
    m.alarm_states = {1};
    const AugmentedMdp aug = augment_counting(m);
    const MarkovPolicy policy = test::point_policy(3, aug.num_aug_states(), 1, {});
    const OccupationMeasure rho = forward_propagate(aug.mdp, policy);
    CHECK(rho.terminal[aug.index_of(1, 3)] == doctest::Approx(1.0)); // T alarms with certainty
}

TEST_CASE("section5 counting augmentation has 256 states") {
    const AugmentedMdp aug = augment_counting(builtin::section5_mdp());
    CHECK(aug.num_aug_states() == 256);
    CHECK(validate_mdp(aug.mdp).ok);
}

TEST_CASE("augmented kernels stay exactly row-stochastic and respect flag dynamics") {
    for (std::uint64_t seed : {1ull, 9ull, 23ull}) {
        const RandomInstance inst = random_tiny_instance(seed);
        const Mdp& m = inst.mdp;

        const AugmentedMdp bin = augment_binary(m);
        CHECK(validate_mdp(bin.mdp).ok);
        // flag absorbing at 1: no mass from (., 1) back to (., 0)
        for (int x = 0; x < m.num_states; ++x)
            for (int a = 0; a < m.num_actions; ++a)
                for (int xp = 0; xp < m.num_states; ++xp)
                    CHECK(bin.mdp.p(bin.index_of(x, 1), a, bin.index_of(xp, 0)) == 0.0);

        const AugmentedMdp cnt = augment_counting(m);
        CHECK(validate_mdp(cnt.mdp).ok);
        // counter moves by 0 or +1 only
        for (int y = 0; y < cnt.num_levels; ++y)
            for (int yp = 0; yp < cnt.num_levels; ++yp) {
                if (yp == y || yp == y + 1 || (y == m.horizon && yp == y)) continue;
                for (int x = 0; x < m.num_states; ++x)
                    for (int a = 0; a < m.num_actions; ++a)
                        for (int xp = 0; xp < m.num_states; ++xp)
                            CHECK(cnt.mdp.p(cnt.index_of(x, y), a, cnt.index_of(xp, yp)) == 0.0);
            }
    }
}

TEST_CASE("flag value tracks the alarm statistic along every positive-probability path") {
    const RandomInstance inst = random_tiny_instance(31);
    const Mdp& m = inst.mdp;
    const auto alarm = alarm_mask(m);

    for (AugMode mode : {AugMode::Binary, AugMode::Counting}) {
        const AugmentedMdp aug = mode == AugMode::Binary ? augment_binary(m) : augment_counting(m);
        // walk the augmented kernel from (x0, 0); every reachable (x, y) must
        // satisfy y = statistic(x-path); explored via kernel support
        struct Node {
            int state;
            int statistic;
        };
        std::vector<Node> stack{{aug.mdp.initial_state, 0}};
        std::vector<std::vector<char>> seen(m.horizon + 1,
                                            std::vector<char>(aug.num_aug_states(), 0));
        std::vector<int> depth_stack{0};
        while (!stack.empty()) {
            const Node node = stack.back();
            stack.pop_back();
            const int depth = depth_stack.back();
            depth_stack.pop_back();
            const auto [x, y] = aug.state_of(node.state);
            CHECK(y == node.statistic);
            if (depth == m.horizon) continue;
            for (int a = 0; a < aug.mdp.num_actions; ++a)
                for (int next = 0; next < aug.num_aug_states(); ++next) {
                    if (aug.mdp.p(node.state, a, next) == 0.0 || seen[depth + 1][next]) continue;
                    seen[depth + 1][next] = 1;
                    const auto [xp, yp] = aug.state_of(next);
                    int statistic = node.statistic;
                    if (alarm[xp])
                        statistic = mode == AugMode::Binary ? 1 : std::min(statistic + 1, m.horizon);
                    stack.push_back({next, statistic});
                    depth_stack.push_back(depth + 1);
                }
        }
    }
}

TEST_CASE("augmentation rejects invalid bases") {
    Mdp bad = make_mdp(2, 1, 1);
    bad.p(0, 0, 0) = 0.7; // row does not sum to 1
    bad.p(1, 0, 1) = 1.0;
    CHECK_THROWS_AS(augment_binary(bad), InputError);
    CHECK_THROWS_AS(augment_counting(bad), InputError);
}
