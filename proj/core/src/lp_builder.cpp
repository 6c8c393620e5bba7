#include "ccmdp/lp_builder.hpp"

#include "ccmdp/errors.hpp"

#include <cmath>

namespace ccmdp {

namespace {

// Shared skeleton: objective, flow conservation, initial mass, terminal
// definition, [0,1] box with the t=0 block pinned to the initial state.
LpProblem build_skeleton(const AugmentedMdp& aug) {
    const Mdp& m = aug.mdp;
    const int S = m.num_states;
    const int A = m.num_actions;
    const int T = m.horizon;

    LpProblem lp;
    lp.variable_map = VariableMap{T, S, A};
    lp.num_vars = lp.variable_map.num_vars();
    lp.objective.assign(lp.num_vars, 0.0);
    lp.lower.assign(lp.num_vars, 0.0);
    lp.upper.assign(lp.num_vars, 1.0);

    const VariableMap& vm = lp.variable_map;
    for (int t = 0; t < T; ++t)
        for (int x = 0; x < S; ++x)
            for (int a = 0; a < A; ++a) lp.objective[vm.col(t, x, a)] = m.reward(t, x, a);
    for (int x = 0; x < S; ++x) lp.objective[vm.col_terminal(x)] = m.terminal_reward[x];

    // Initial mass: sum_a rho_0(x0hat, a) = 1; all other t=0 entries are
    // fixed to zero through their upper bounds.
    int row = 0;
    for (int a = 0; a < A; ++a) lp.equalities.push_back({row, vm.col(0, m.initial_state, a), 1.0});
    lp.eq_rhs.push_back(1.0);
    ++row;
    for (int x = 0; x < S; ++x) {
        if (x == m.initial_state) continue;
        for (int a = 0; a < A; ++a) lp.upper[vm.col(0, x, a)] = 0.0;
    }

    // Flow conservation for t = 1..T-1:
    //   sum_a rho_t(x,a) - sum_{xb,a} P(x|xb,a) rho_{t-1}(xb,a) = 0
    for (int t = 1; t < T; ++t) {
        for (int x = 0; x < S; ++x) {
            for (int a = 0; a < A; ++a) lp.equalities.push_back({row, vm.col(t, x, a), 1.0});
            for (int xb = 0; xb < S; ++xb)
                for (int a = 0; a < A; ++a) {
                    const double p = m.p(xb, a, x);
                    if (p != 0.0) lp.equalities.push_back({row, vm.col(t - 1, xb, a), -p});
                }
            lp.eq_rhs.push_back(0.0);
            ++row;
        }
    }

    // Terminal definition: rho_T(x) - sum_{xb,a} P(x|xb,a) rho_{T-1}(xb,a) = 0.
    for (int x = 0; x < S; ++x) {
        lp.equalities.push_back({row, vm.col_terminal(x), 1.0});
        for (int xb = 0; xb < S; ++xb)
            for (int a = 0; a < A; ++a) {
                const double p = m.p(xb, a, x);
                if (p != 0.0) lp.equalities.push_back({row, vm.col(T - 1, xb, a), -p});
            }
        lp.eq_rhs.push_back(0.0);
        ++row;
    }

    return lp;
}

} // namespace

LpProblem build_problem1_lp(const AugmentedMdp& aug, double delta) {
    if (aug.mode != AugMode::Binary)
        throw InputError("build_problem1_lp requires a binary augmentation");
    if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0,1]");

    LpProblem lp = build_skeleton(aug);
    const int S = aug.base.num_states;
    for (int x = 0; x < S; ++x)
        lp.inequalities.push_back({0, lp.variable_map.col_terminal(aug.index_of(x, 1)), 1.0});
    lp.ineq_rhs.push_back(delta);
    return lp;
}

LpProblem build_problem2_lp(const AugmentedMdp& aug, std::span<const double> deltas) {
    if (aug.mode != AugMode::Counting)
        throw InputError("build_problem2_lp requires a counting augmentation");
    const int T = aug.mdp.horizon;
    if (static_cast<int>(deltas.size()) != T)
        throw InputError("expected exactly T deltas, got " + std::to_string(deltas.size()));
    for (double d : deltas)
        if (!(d >= 0.0 && d <= 1.0)) throw InputError("every delta must lie in [0,1]");

    LpProblem lp = build_skeleton(aug);
    const int S = aug.base.num_states;
    for (int i = 1; i <= T; ++i) {
        const int row = i - 1;
        for (int y = i; y < aug.num_levels; ++y)
            for (int x = 0; x < S; ++x)
                lp.inequalities.push_back({row, lp.variable_map.col_terminal(aug.index_of(x, y)), 1.0});
        lp.ineq_rhs.push_back(deltas[i - 1]);
    }
    return lp;
}

double objective_value(const AugmentedMdp& aug, const OccupationMeasure& rho) {
    const Mdp& m = aug.mdp;
    if (rho.horizon != m.horizon || rho.num_states != m.num_states || rho.num_actions != m.num_actions)
        throw InputError("occupation measure does not match the augmented MDP");
    double sum = 0.0;
    for (int t = 0; t < m.horizon; ++t)
        for (int x = 0; x < m.num_states; ++x)
            for (int a = 0; a < m.num_actions; ++a) sum += m.reward(t, x, a) * rho.at(t, x, a);
    for (int x = 0; x < m.num_states; ++x) sum += m.terminal_reward[x] * rho.terminal[x];
    return sum;
}

OccupationMeasure occupation_from_values(const AugmentedMdp& aug, const LpProblem& problem,
                                         std::span<const double> values) {
    const VariableMap& vm = problem.variable_map;
    if (static_cast<int>(values.size()) != problem.num_vars || vm.num_vars() != problem.num_vars)
        throw InputError("solution vector does not match the LP");
    if (vm.num_states != aug.num_aug_states() || vm.horizon != aug.mdp.horizon)
        throw InputError("LP does not match the augmented MDP");

    OccupationMeasure rho = make_occupation(vm.horizon, vm.num_states, vm.num_actions);
    for (int t = 0; t < vm.horizon; ++t)
        for (int x = 0; x < vm.num_states; ++x)
            for (int a = 0; a < vm.num_actions; ++a) rho.at(t, x, a) = values[vm.col(t, x, a)];
    for (int x = 0; x < vm.num_states; ++x) rho.terminal[x] = values[vm.col_terminal(x)];
    return rho;
}

std::vector<double> values_from_occupation(const LpProblem& problem, const OccupationMeasure& rho) {
    const VariableMap& vm = problem.variable_map;
    if (vm.num_vars() != problem.num_vars || rho.horizon != vm.horizon ||
        rho.num_states != vm.num_states || rho.num_actions != vm.num_actions)
        throw InputError("occupation measure does not match the LP");
    std::vector<double> values(problem.num_vars, 0.0);
    for (int t = 0; t < vm.horizon; ++t)
        for (int x = 0; x < vm.num_states; ++x)
            for (int a = 0; a < vm.num_actions; ++a) values[vm.col(t, x, a)] = rho.at(t, x, a);
    for (int x = 0; x < vm.num_states; ++x) values[vm.col_terminal(x)] = rho.terminal[x];
    return values;
}

double max_mass_error(const OccupationMeasure& rho) {
    double worst = 0.0;
    for (int t = 0; t < rho.horizon; ++t) {
        double mass = 0.0;
        for (int x = 0; x < rho.num_states; ++x) mass += rho.state_mass(t, x);
        worst = std::max(worst, std::fabs(mass - 1.0));
    }
    double mass = 0.0;
    for (int x = 0; x < rho.num_states; ++x) mass += rho.terminal[x];
    worst = std::max(worst, std::fabs(mass - 1.0));
    return worst;
}

} // namespace ccmdp
