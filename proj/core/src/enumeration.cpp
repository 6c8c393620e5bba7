#include "ccmdp/enumeration.hpp"

#include "ccmdp/errors.hpp"

#include <cmath>

namespace ccmdp {

double path_probability(const Mdp& mdp, const HistoryPolicy& policy,
                        std::span<const int> states, std::span<const int> actions) {
    const int T = mdp.horizon;
    if (static_cast<int>(states.size()) != T + 1 || static_cast<int>(actions.size()) != T)
        throw InputError("path must have T+1 states and T actions");
    if (policy.base_states != mdp.num_states || policy.horizon() != T)
        throw InputError("policy dimensions do not match the MDP");
    for (int x : states)
        if (x < 0 || x >= mdp.num_states) throw InputError("path state out of range");
    for (int a : actions)
        if (a < 0 || a >= mdp.num_actions) throw InputError("path action out of range");

    if (states[0] != mdp.initial_state) return 0.0;

    double prob = 1.0;
    auto tracker = policy.tracker();
    tracker.reset(states[0]);
    for (int t = 0; t < T; ++t) {
        prob *= tracker.distribution(t, states[t])[actions[t]];
        prob *= mdp.p(states[t], actions[t], states[t + 1]);
        if (prob == 0.0) return 0.0;
        tracker.observe(states[t + 1]);
    }
    return prob;
}

double alarm_event_probability(const Mdp& mdp, const HistoryPolicy& policy, int min_alarms,
                               double enumeration_limit) {
    if (policy.base_states != mdp.num_states || policy.horizon() != mdp.horizon)
        throw InputError("policy dimensions do not match the MDP");
    if (min_alarms <= 0) return 1.0;

    const double size = std::pow(mdp.num_states, mdp.horizon + 1) * std::pow(mdp.num_actions, mdp.horizon);
    if (size > enumeration_limit)
        throw ResourceLimitError("path space too large for exhaustive enumeration");

    const auto alarm = alarm_mask(mdp);

    // Depth-first walk over kernel-positive paths; alarms counts visits to
    // the alarm region over t = 0..T, statistic tracks the policy's memory.
    double total = 0.0;
    struct Frame {
        int state;
        int alarms;
        int statistic;
        double prob;
    };
    auto recurse = [&](auto&& self, int t, const Frame& f) -> void {
        if (f.alarms >= min_alarms) {
            total += f.prob; // alarm count can only grow along the path
            return;
        }
        if (t == mdp.horizon) return;
        for (int a = 0; a < mdp.num_actions; ++a) {
            const double pa = policy.distribution_at(t, f.state, f.statistic)[a];
            if (pa == 0.0) continue;
            for (int xp = 0; xp < mdp.num_states; ++xp) {
                const double px = mdp.p(f.state, a, xp);
                if (px == 0.0) continue;
                Frame next;
                next.state = xp;
                next.alarms = f.alarms + (alarm[xp] ? 1 : 0);
                next.statistic = policy.advance(f.statistic, xp);
                next.prob = f.prob * pa * px;
                self(self, t + 1, next);
            }
        }
    };

    Frame root;
    root.state = mdp.initial_state;
    root.alarms = alarm[root.state] ? 1 : 0;
    root.statistic = alarm[root.state] ? 1 : 0;
    root.prob = 1.0;
    recurse(recurse, 0, root);
    return total;
}

} // namespace ccmdp
