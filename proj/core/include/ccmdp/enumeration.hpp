#pragma once

#include "ccmdp/mdp.hpp"
#include "ccmdp/policy.hpp"

#include <span>

namespace ccmdp {

/// Default cap on |X|^(T+1) * |A|^T for exhaustive path enumeration.
inline constexpr double kEnumerationLimit = 1e7;

/**
 * Exact probability of one full path under a history policy: the product of
 * policy probabilities and kernel probabilities along it. Expects T+1 states
 * and T actions; a path that does not start at the initial state has
 * probability zero.
 */
double path_probability(const Mdp& mdp, const HistoryPolicy& policy,
                        std::span<const int> states, std::span<const int> actions);

/**
 * Exact P(at least min_alarms visits to the alarm region over t = 0..T) by
 * exhaustive enumeration. Throws ResourceLimitError when |X|^(T+1) * |A|^T
 * exceeds the limit.
 */
double alarm_event_probability(const Mdp& mdp, const HistoryPolicy& policy, int min_alarms,
                               double enumeration_limit = kEnumerationLimit);

} // namespace ccmdp
