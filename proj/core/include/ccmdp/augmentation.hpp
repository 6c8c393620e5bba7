#pragma once

#include "ccmdp/mdp.hpp"

#include <utility>

namespace ccmdp {

enum class AugMode { Binary, Counting };

const char* to_string(AugMode mode);

/**
 * An MDP over the product space X x Y where Y carries the alarm statistic:
 * a sticky flag {0,1} in Binary mode, a saturating counter {0..T} in
 * Counting mode.
 *
 * Augmented state indices are y-major: index = y * |X| + x. No code outside
 * this module may rely on that layout; use index_of / state_of.
 */
struct AugmentedMdp {
    AugMode mode = AugMode::Binary;
    Mdp base;
    Mdp mdp;            // the augmented MDP itself
    int num_levels = 0; // |Y|

    int num_aug_states() const { return mdp.num_states; }
    int index_of(int x, int y) const { return y * base.num_states + x; }
    std::pair<int, int> state_of(int index) const {
        return {index % base.num_states, index / base.num_states};
    }
};

/**
 * Builds the binary augmentation: the flag starts at 0, is raised exactly
 * when the chain enters the alarm region, and is absorbing at 1. Rewards are
 * copied across flag values and the alarm region becomes X_a x Y.
 */
AugmentedMdp augment_binary(const Mdp& mdp);

/**
 * Builds the counting augmentation: the counter starts at 0, increments by
 * one on every transition into an alarm state, and saturates at T.
 */
AugmentedMdp augment_counting(const Mdp& mdp);

} // namespace ccmdp
