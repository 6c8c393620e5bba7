#include "ccmdp/policy.hpp"

#include "ccmdp/errors.hpp"

#include <cmath>

namespace ccmdp {

MarkovPolicy make_markov_policy(int horizon, int num_states, int num_actions) {
    MarkovPolicy p;
    p.horizon = horizon;
    p.num_states = num_states;
    p.num_actions = num_actions;
    p.tables.assign(static_cast<std::size_t>(horizon) * num_states * num_actions, 0.0);
    return p;
}

bool policy_rows_stochastic(const MarkovPolicy& policy) {
    for (int t = 0; t < policy.horizon; ++t) {
        for (int x = 0; x < policy.num_states; ++x) {
            double sum = 0.0;
            for (int a = 0; a < policy.num_actions; ++a) {
                const double v = policy.prob(t, x, a);
                if (!(v >= 0.0)) return false;
                sum += v;
            }
            if (std::fabs(sum - 1.0) > kPolicyRowTolerance) return false;
        }
    }
    return true;
}

int HistoryPolicy::statistic_of(std::span<const int> prefix) const {
    int y = 0;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        const int x = prefix[k];
        if (x < 0 || x >= base_states) throw InputError("history contains an out-of-range state");
        if (k == 0)
            y = alarm[x] ? 1 : 0;
        else
            y = advance(y, x);
    }
    return y;
}

std::span<const double> HistoryPolicy::distribution(int t, std::span<const int> prefix) const {
    if (static_cast<int>(prefix.size()) != t + 1)
        throw InputError("history must contain the states x_0..x_t");
    return distribution_at(t, prefix.back(), statistic_of(prefix));
}

MarkovPolicy extract_policy(const AugmentedMdp& aug, const OccupationMeasure& rho) {
    const int T = aug.mdp.horizon;
    const int S = aug.num_aug_states();
    const int A = aug.mdp.num_actions;
    if (rho.horizon != T || rho.num_states != S || rho.num_actions != A)
        throw InputError("occupation measure does not match the augmented MDP");

    MarkovPolicy policy = make_markov_policy(T, S, A);
    const double uniform = 1.0 / A;
    for (int t = 0; t < T; ++t) {
        for (int x = 0; x < S; ++x) {
            const double mass = rho.state_mass(t, x);
            for (int a = 0; a < A; ++a)
                policy.prob(t, x, a) = mass > kExtractionMassFloor ? rho.at(t, x, a) / mass : uniform;
        }
    }
    return policy;
}

HistoryPolicy lift_policy(const MarkovPolicy& policy, const AugmentedMdp& aug) {
    if (policy.horizon != aug.mdp.horizon || policy.num_states != aug.num_aug_states() ||
        policy.num_actions != aug.mdp.num_actions)
        throw InputError("policy dimensions do not match the augmented MDP");

    HistoryPolicy lifted;
    lifted.inner = policy;
    lifted.mode = aug.mode;
    lifted.base_states = aug.base.num_states;
    lifted.counter_cap = aug.mode == AugMode::Binary ? 1 : aug.base.horizon;
    lifted.alarm = alarm_mask(aug.base);
    return lifted;
}

} // namespace ccmdp
