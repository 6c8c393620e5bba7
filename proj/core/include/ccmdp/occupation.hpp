#pragma once

#include <vector>

namespace ccmdp {

/**
 * Occupation measure of a policy: rho_t(x,a) = P(X_t = x, A_t = a) for
 * t = 0..T-1 plus the terminal state marginal rho_T(x). The state space may
 * be a base or an augmented one; num_states records its size.
 */
struct OccupationMeasure {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> rho;      // [t][x][a], size T * num_states * num_actions
    std::vector<double> terminal; // [x]

    double at(int t, int x, int a) const {
        return rho[(static_cast<std::size_t>(t) * num_states + x) * num_actions + a];
    }
    double& at(int t, int x, int a) {
        return rho[(static_cast<std::size_t>(t) * num_states + x) * num_actions + a];
    }
    double state_mass(int t, int x) const {
        double sum = 0.0;
        for (int a = 0; a < num_actions; ++a) sum += at(t, x, a);
        return sum;
    }
};

OccupationMeasure make_occupation(int horizon, int num_states, int num_actions);

} // namespace ccmdp
