#include "test_util.hpp"

#include "ccmdp/builtin.hpp"
#include "ccmdp/enumeration.hpp"
#include "ccmdp/errors.hpp"
#include "ccmdp/instance_gen.hpp"
#include "ccmdp/mdp.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccmdp;

namespace {

Mdp identity_mdp() {
    Mdp m = make_mdp(2, 1, 1);
    m.p(0, 0, 0) = 1.0;
    m.p(1, 0, 1) = 1.0;
    return m;
}

} // namespace

TEST_CASE("identity kernel validates") {
    const ValidationReport report = validate_mdp(identity_mdp());
    CHECK(report.ok);
    CHECK(report.violations.empty());
}

TEST_CASE("row sum violation is reported with its magnitude") {
    Mdp m = identity_mdp();
    m.p(0, 0, 0) = 0.9;
    const ValidationReport report = validate_mdp(m);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].location == "transition[0][0]");
    CHECK(report.violations[0].magnitude == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("section5 model validates") {
    CHECK(validate_mdp(builtin::section5_mdp()).ok);
    CHECK(validate_mdp(builtin::appendix_mdp()).ok);
}

TEST_CASE("every violation class is caught") {
    Mdp m = identity_mdp();
    m.p(0, 0, 0) = -0.2;
    m.p(0, 0, 1) = 1.2;
    m.alarm_states = {7};
    m.rewards.clear();
    const ValidationReport report = validate_mdp(m);
    REQUIRE_FALSE(report.ok);
    bool negative = false, alarm_range = false, reward_shape = false;
    for (const auto& v : report.violations) {
        if (v.description.find("negative") != std::string::npos) negative = true;
        if (v.location == "alarm_states") alarm_range = true;
        if (v.location == "rewards") reward_shape = true;
    }
    CHECK(negative);
    CHECK(alarm_range);
    CHECK(reward_shape);
}

TEST_CASE("alarming initial state is rejected") {
    Mdp m = identity_mdp();
    m.alarm_states = {0};
    m.initial_state = 0;
    const ValidationReport report = validate_mdp(m);
    REQUIRE_FALSE(report.ok);
    CHECK(report.violations[0].location == "initial_state");

    m.initial_state = 1;
    CHECK(validate_mdp(m).ok);
}

TEST_CASE("path probability on a deterministic chain is 1") {
    Mdp m = make_mdp(3, 1, 2);
    m.p(0, 0, 1) = 1.0;
    m.p(1, 0, 2) = 1.0;
    m.p(2, 0, 2) = 1.0;
    const AugmentedMdp aug = augment_binary(m);
    const HistoryPolicy policy =
        lift_policy(test::point_policy(2, aug.num_aug_states(), 1, {}), aug);

    const int states[] = {0, 1, 2};
    const int actions[] = {0, 0};
    CHECK(path_probability(m, policy, states, actions) == doctest::Approx(1.0));

    const int other[] = {0, 2, 2};
    CHECK(path_probability(m, policy, other, actions) == 0.0);
}

TEST_CASE("appendix path through the lucky branch has probability 3/8") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    // play the risky action at the hub, the first action elsewhere
    const MarkovPolicy inner = test::augmented_policy(
        aug, [](int, int x, int, int a) -> double { return a == (x == 3 ? 1 : 0) ? 1.0 : 0.0; });
    const HistoryPolicy policy = lift_policy(inner, aug);

    const int states[] = {0, 1, 3, 5};
    const int actions[] = {0, 0, 1};
    CHECK(path_probability(m, policy, states, actions) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("path probabilities sum to one over the whole path space") {
    const RandomInstance inst = random_tiny_instance(3);
    const AugmentedMdp aug = augment_binary(inst.mdp);
    const HistoryPolicy policy = lift_policy(
        test::random_policy(inst.mdp.horizon, aug.num_aug_states(), inst.mdp.num_actions, 7), aug);

    double total = 0.0;
    test::for_each_path(inst.mdp, [&](const std::vector<int>& states, const std::vector<int>& actions) {
        total += path_probability(inst.mdp, policy, states, actions);
    });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("path probability rejects malformed paths") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);
    const HistoryPolicy policy =
        lift_policy(test::point_policy(3, aug.num_aug_states(), 2, {}), aug);
    const int too_short[] = {0, 1};
    const int actions[] = {0, 0, 0};
    CHECK_THROWS_AS(path_probability(m, policy, too_short, actions), InputError);
}

TEST_CASE("alarm event probability") {
    const Mdp m = builtin::appendix_mdp();
    const AugmentedMdp aug = augment_binary(m);

    SUBCASE("at least zero alarms is certain") {
        const HistoryPolicy policy =
            lift_policy(test::point_policy(3, aug.num_aug_states(), 2, {}), aug);
        CHECK(alarm_event_probability(m, policy, 0) == 1.0);
    }

    SUBCASE("the optimal history policy alarms with probability exactly 1/2") {
        // risky with 2/3 when clean, always risky after an alarm
        const MarkovPolicy inner = test::augmented_policy(aug, [](int, int x, int y, int a) {
            if (x != 3) return a == 0 ? 1.0 : 0.0;
            const double risky = y == 1 ? 1.0 : 2.0 / 3.0;
            return a == 1 ? risky : 1.0 - risky;
        });
        const HistoryPolicy policy = lift_policy(inner, aug);
        CHECK(alarm_event_probability(m, policy, 1) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("complement of the alarm-free path set") {
        const RandomInstance inst = random_tiny_instance(5);
        const AugmentedMdp a2 = augment_binary(inst.mdp);
        const HistoryPolicy policy = lift_policy(
            test::random_policy(inst.mdp.horizon, a2.num_aug_states(), inst.mdp.num_actions, 11),
            a2);
        const auto alarm = alarm_mask(inst.mdp);
        double alarm_free = 0.0;
        test::for_each_path(inst.mdp,
                            [&](const std::vector<int>& states, const std::vector<int>& actions) {
                                for (int x : states)
                                    if (alarm[x]) return;
                                alarm_free += path_probability(inst.mdp, policy, states, actions);
                            });
        CHECK(alarm_event_probability(inst.mdp, policy, 1) ==
              doctest::Approx(1.0 - alarm_free).epsilon(1e-9));
    }

    SUBCASE("monotone non-increasing in the alarm count") {
        const RandomInstance inst = random_tiny_instance(8);
        const AugmentedMdp a2 = augment_counting(inst.mdp);
        const HistoryPolicy policy = lift_policy(
            test::random_policy(inst.mdp.horizon, a2.num_aug_states(), inst.mdp.num_actions, 13),
            a2);
        double previous = 1.0;
        for (int i = 0; i <= inst.mdp.horizon; ++i) {
            const double p = alarm_event_probability(inst.mdp, policy, i);
            CHECK(p <= previous + 1e-12);
            previous = p;
        }
    }

    SUBCASE("oversized instances are refused") {
        const Mdp big = builtin::section5_mdp();
        const AugmentedMdp aug_big = augment_binary(big);
        const HistoryPolicy policy = lift_policy(
            test::point_policy(big.horizon, aug_big.num_aug_states(), big.num_actions, {}), aug_big);
        CHECK_THROWS_AS(alarm_event_probability(big, policy, 1), ResourceLimitError);
    }
}
