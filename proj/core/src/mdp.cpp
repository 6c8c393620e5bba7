#include "ccmdp/mdp.hpp"

#include "ccmdp/errors.hpp"

#include <cmath>
#include <sstream>

namespace ccmdp {

Mdp make_mdp(int num_states, int num_actions, int horizon) {
    Mdp m;
    m.num_states = num_states;
    m.num_actions = num_actions;
    m.horizon = horizon;
    m.transition.assign(static_cast<std::size_t>(num_states) * num_actions * num_states, 0.0);
    m.rewards.assign(horizon, std::vector<double>(static_cast<std::size_t>(num_states) * num_actions, 0.0));
    m.terminal_reward.assign(num_states, 0.0);
    return m;
}

std::vector<std::uint8_t> alarm_mask(const Mdp& mdp) {
    std::vector<std::uint8_t> mask(mdp.num_states, 0);
    for (int s : mdp.alarm_states)
        if (s >= 0 && s < mdp.num_states) mask[s] = 1;
    return mask;
}

namespace {

std::string idx2(const char* name, int i, int j) {
    std::ostringstream os;
    os << name << "[" << i << "][" << j << "]";
    return os.str();
}

} // namespace

ValidationReport validate_mdp(const Mdp& mdp) {
    ValidationReport report;

    if (mdp.num_states <= 0) report.add("num_states", "must be positive", mdp.num_states);
    if (mdp.num_actions <= 0) report.add("num_actions", "must be positive", mdp.num_actions);
    if (mdp.horizon <= 0) report.add("horizon", "must be positive", mdp.horizon);
    if (!report.ok) return report; // shapes below are meaningless without positive dims

    const std::size_t want_kernel =
        static_cast<std::size_t>(mdp.num_states) * mdp.num_actions * mdp.num_states;
    if (mdp.transition.size() != want_kernel) {
        report.add("transition", "kernel has wrong shape",
                   static_cast<double>(mdp.transition.size()) - static_cast<double>(want_kernel));
        return report;
    }

    for (int x = 0; x < mdp.num_states; ++x) {
        for (int a = 0; a < mdp.num_actions; ++a) {
            double sum = 0.0;
            for (int xp = 0; xp < mdp.num_states; ++xp) {
                const double v = mdp.p(x, a, xp);
                if (!std::isfinite(v)) {
                    report.add(idx2("transition", x, a), "non-finite probability", v);
                } else if (v < 0.0) {
                    report.add(idx2("transition", x, a), "negative probability", -v);
                }
                sum += v;
            }
            if (!(std::fabs(sum - 1.0) <= kRowSumTolerance))
                report.add(idx2("transition", x, a), "row sum differs from 1", std::fabs(sum - 1.0));
        }
    }

    if (static_cast<int>(mdp.rewards.size()) != mdp.horizon) {
        report.add("rewards", "expected one table per step t = 0..T-1",
                   static_cast<double>(mdp.rewards.size()) - mdp.horizon);
    } else {
        const std::size_t want = static_cast<std::size_t>(mdp.num_states) * mdp.num_actions;
        for (int t = 0; t < mdp.horizon; ++t) {
            if (mdp.rewards[t].size() != want) {
                report.add("rewards[" + std::to_string(t) + "]", "table has wrong shape",
                           static_cast<double>(mdp.rewards[t].size()) - static_cast<double>(want));
                continue;
            }
            for (std::size_t i = 0; i < want; ++i)
                if (!std::isfinite(mdp.rewards[t][i]))
                    report.add("rewards[" + std::to_string(t) + "]", "non-finite reward", mdp.rewards[t][i]);
        }
    }
    if (static_cast<int>(mdp.terminal_reward.size()) != mdp.num_states) {
        report.add("terminal_reward", "expected one entry per state",
                   static_cast<double>(mdp.terminal_reward.size()) - mdp.num_states);
    } else {
        for (int x = 0; x < mdp.num_states; ++x)
            if (!std::isfinite(mdp.terminal_reward[x]))
                report.add("terminal_reward[" + std::to_string(x) + "]", "non-finite reward",
                           mdp.terminal_reward[x]);
    }

    for (int s : mdp.alarm_states)
        if (s < 0 || s >= mdp.num_states)
            report.add("alarm_states", "state index out of range", s);

    if (mdp.initial_state < 0 || mdp.initial_state >= mdp.num_states) {
        report.add("initial_state", "state index out of range", mdp.initial_state);
    } else if (mdp.is_alarm(mdp.initial_state)) {
        // The augmented chain starts with a cleared flag, so an alarming
        // initial state would break the terminal-marginal reformulation.
        report.add("initial_state", "initial state lies in the alarm region", mdp.initial_state);
    }

    return report;
}

void require_valid(const Mdp& mdp, const std::string& context) {
    ValidationReport report = validate_mdp(mdp);
    if (report.ok) return;
    std::ostringstream os;
    os << context << " failed validation:";
    const std::size_t shown = std::min<std::size_t>(report.violations.size(), 5);
    for (std::size_t i = 0; i < shown; ++i)
        os << " [" << report.violations[i].location << ": " << report.violations[i].description << "]";
    if (report.violations.size() > shown)
        os << " (+" << report.violations.size() - shown << " more)";
    throw InputError(os.str());
}

} // namespace ccmdp
