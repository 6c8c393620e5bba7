#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccmdp {

/**
 * Finite-horizon MDP with an alarm region and a fixed initial state.
 *
 * States are indexed 0..num_states-1 and actions 0..num_actions-1.
 * The transition kernel is time-invariant; time-varying plants are modeled
 * by folding the time index into the state.
 *
 * Layout:
 *   transition[(x*num_actions + a)*num_states + x']  = P(x'|x,a)
 *   rewards[t][x*num_actions + a]                    = r_t(x,a), t = 0..horizon-1
 *   terminal_reward[x]                               = r_T(x)
 */
struct Mdp {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0; // T; the time index set is {0,...,T}
    std::vector<double> transition;
    std::vector<std::vector<double>> rewards;
    std::vector<double> terminal_reward;
    std::vector<int> alarm_states;
    int initial_state = 0;

    double p(int x, int a, int xp) const {
        return transition[static_cast<std::size_t>(x * num_actions + a) * num_states + xp];
    }
    double& p(int x, int a, int xp) {
        return transition[static_cast<std::size_t>(x * num_actions + a) * num_states + xp];
    }
    double reward(int t, int x, int a) const { return rewards[t][x * num_actions + a]; }
    bool is_alarm(int x) const {
        for (int s : alarm_states)
            if (s == x) return true;
        return false;
    }
};

/// Creates a zero-initialized MDP with allocated tables of the right shapes.
Mdp make_mdp(int num_states, int num_actions, int horizon);

/// 0/1 lookup table over states, 1 where the state is in the alarm region.
std::vector<std::uint8_t> alarm_mask(const Mdp& mdp);

struct Violation {
    std::string location;
    std::string description;
    double magnitude = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string location, std::string description, double magnitude) {
        ok = false;
        violations.push_back({std::move(location), std::move(description), magnitude});
    }
};

/// Row-sum tolerance applied to the transition kernel on input.
inline constexpr double kRowSumTolerance = 1e-12;

/**
 * Checks every structural invariant of an MDP and reports all problems found:
 * row sums off by more than 1e-12, negative kernel entries, out-of-range alarm
 * indices, reward-table shape mismatches, non-finite values, and an initial
 * state inside the alarm region.
 */
ValidationReport validate_mdp(const Mdp& mdp);

/// Throws InputError listing the first few violations if the MDP is invalid.
void require_valid(const Mdp& mdp, const std::string& context = "mdp");

} // namespace ccmdp
