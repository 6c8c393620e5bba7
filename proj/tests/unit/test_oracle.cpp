#include "test_util.hpp"

#include "ccmdp/builtin.hpp"
#include "ccmdp/errors.hpp"
#include "ccmdp/instance_gen.hpp"
#include "ccmdp/lp_builder.hpp"
#include "ccmdp/lp_solver.hpp"
#include "ccmdp/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace ccmdp;

TEST_CASE("unconstrained path LP equals backward induction") {
    for (std::uint64_t seed : {4ull, 16ull, 38ull}) {
        const RandomInstance inst = random_tiny_instance(seed);
        const double vacuous[1] = {1.0};
        CHECK(solve_path_lp(inst.mdp, vacuous) ==
              doctest::Approx(backward_induction_value(inst.mdp)).epsilon(1e-9));
    }
}

TEST_CASE("appendix path LP reaches 4 at delta = 1/2") {
    const double deltas[1] = {0.5};
    CHECK(solve_path_lp(builtin::appendix_mdp(), deltas) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("appendix Markov grid search") {
    const Mdp m = builtin::appendix_mdp();

    SUBCASE("resolution 1/300 lands on 11/3") {
        const double value = markov_grid_search(m, 0.5, 300);
        CHECK(std::fabs(value - 11.0 / 3.0) <= 0.02);
    }
    SUBCASE("a vacuous bound matches backward induction") {
        CHECK(markov_grid_search(m, 1.0, 8) ==
              doctest::Approx(backward_induction_value(m)).epsilon(1e-9));
    }
    SUBCASE("the grid value sits strictly below the history optimum") {
        const double deltas[1] = {0.5};
        const double history = solve_path_lp(m, deltas);
        const double markov = markov_grid_search(m, 0.5, 300);
        CHECK(history > markov + 0.25);
    }
}

TEST_CASE("grid value never exceeds the path-LP optimum") {
    for (std::uint64_t seed = 200; seed < 212; ++seed) {
        const RandomInstance inst = random_tiny_instance(seed);
        const double deltas[1] = {inst.delta};
        const PathLpResult path = solve_path_lp_status(inst.mdp, deltas);
        if (path.status != SolveStatus::Optimal) continue;
        double grid;
        try {
            grid = markov_grid_search(inst.mdp, inst.delta, 8);
        } catch (const ResourceLimitError&) {
            continue;
        }
        if (!std::isfinite(grid)) continue;
        CHECK(grid <= path.value + 1e-9);
    }
}

TEST_CASE("forward propagation basics") {
    SUBCASE("identity kernel and point policy concentrate the measure") {
        Mdp m = make_mdp(3, 2, 3);
        for (int x = 0; x < 3; ++x)
            for (int a = 0; a < 2; ++a) m.p(x, a, x) = 1.0;
        m.initial_state = 1;
        const MarkovPolicy policy = test::point_policy(3, 3, 2, {});
        const OccupationMeasure rho = forward_propagate(m, policy);
        for (int t = 0; t < 3; ++t) CHECK(rho.at(t, 1, 0) == 1.0);
        CHECK(rho.terminal[1] == 1.0);
    }
    SUBCASE("uniform kernel and uniform policy mix immediately") {
        Mdp m = make_mdp(2, 2, 3);
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 2; ++a)
                for (int xp = 0; xp < 2; ++xp) m.p(x, a, xp) = 0.5;
        MarkovPolicy policy = make_markov_policy(3, 2, 2);
        for (double& v : policy.tables) v = 0.5;
        const OccupationMeasure rho = forward_propagate(m, policy);
        for (int t = 1; t < 3; ++t)
            for (int x = 0; x < 2; ++x) CHECK(rho.state_mass(t, x) == doctest::Approx(0.5));
        CHECK(rho.terminal[0] == doctest::Approx(0.5));
    }
}

TEST_CASE("resource limits") {
    SUBCASE("path LP refuses oversized instances") {
        PathLpOptions options;
        options.max_variables = 10;
        const double deltas[1] = {0.5};
        CHECK_THROWS_AS(solve_path_lp(builtin::appendix_mdp(), deltas, options),
                        ResourceLimitError);
    }
    SUBCASE("grid search refuses oversized candidate spaces") {
        GridSearchOptions options;
        options.max_candidates = 10;
        CHECK_THROWS_AS(markov_grid_search(builtin::appendix_mdp(), 0.5, 300, options),
                        ResourceLimitError);
    }
}

TEST_CASE("path LP rejects bad delta lists") {
    const Mdp m = builtin::appendix_mdp();
    const std::vector<double> too_many(m.horizon + 1, 0.5);
    CHECK_THROWS_AS(solve_path_lp(m, too_many), InputError);
    const double out_of_range[1] = {1.5};
    CHECK_THROWS_AS(solve_path_lp(m, out_of_range), InputError);
}
