#pragma once

#include "ccmdp/mdp.hpp"

#include <string>

namespace ccmdp {
namespace builtin {

/**
 * Seven-state gap example: a single decision at t = 2 between a safe action
 * (reward 1) and a risky action (reward 10 or an alarm, equal odds), after a
 * pre-chain that alarms with probability 1/4. The history-dependent optimum
 * is 4 while the best Markov policy reaches 11/3.
 *
 * States: 0 start, 1 mid, 2 mid-alarm, 3 decision, 4 safe-end, 5 lucky-end,
 * 6 alarm-end. Actions: 0 safe, 1 risky (equal everywhere except state 3).
 */
Mdp appendix_mdp();

/**
 * Sixteen-state drift chain over values 1..16 (state index = value - 1) with
 * actions up/stay/down, horizon 15, alarm region at values 6..16, reward |x|
 * per step and at the terminal step, starting from value 1. Probability mass
 * that would leave the top state stays put.
 */
Mdp section5_mdp();

/// Resolves "appendix" / "section5" (also with a "builtin:" prefix).
Mdp by_name(const std::string& name);

} // namespace builtin
} // namespace ccmdp
