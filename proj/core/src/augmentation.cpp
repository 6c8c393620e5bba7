#include "ccmdp/augmentation.hpp"

#include "ccmdp/errors.hpp"

#include <algorithm>

namespace ccmdp {

const char* to_string(AugMode mode) {
    return mode == AugMode::Binary ? "binary" : "counting";
}

namespace {

AugmentedMdp augment(const Mdp& base, AugMode mode) {
    require_valid(base, "augmentation input");

    const int S = base.num_states;
    const int A = base.num_actions;
    const int T = base.horizon;
    const int Y = mode == AugMode::Binary ? 2 : T + 1;
    const auto alarm = alarm_mask(base);

    AugmentedMdp aug;
    aug.mode = mode;
    aug.base = base;
    aug.num_levels = Y;
    aug.mdp = make_mdp(S * Y, A, T);

    Mdp& m = aug.mdp;
    for (int y = 0; y < Y; ++y) {
        for (int x = 0; x < S; ++x) {
            const int i = aug.index_of(x, y);
            for (int a = 0; a < A; ++a) {
                for (int xp = 0; xp < S; ++xp) {
                    const double prob = base.p(x, a, xp);
                    if (prob == 0.0) continue;
                    int yp;
                    if (mode == AugMode::Binary)
                        yp = (y == 1 || alarm[xp]) ? 1 : 0;
                    else
                        yp = alarm[xp] ? std::min(y + 1, T) : y;
                    m.p(i, a, aug.index_of(xp, yp)) += prob;
                }
            }
        }
    }

    for (int t = 0; t < T; ++t)
        for (int y = 0; y < Y; ++y)
            for (int x = 0; x < S; ++x)
                for (int a = 0; a < A; ++a)
                    m.rewards[t][aug.index_of(x, y) * A + a] = base.reward(t, x, a);
    for (int y = 0; y < Y; ++y)
        for (int x = 0; x < S; ++x)
            m.terminal_reward[aug.index_of(x, y)] = base.terminal_reward[x];

    for (int y = 0; y < Y; ++y)
        for (int s : base.alarm_states)
            m.alarm_states.push_back(aug.index_of(s, y));
    std::sort(m.alarm_states.begin(), m.alarm_states.end());

    m.initial_state = aug.index_of(base.initial_state, 0);
    return aug;
}

} // namespace

AugmentedMdp augment_binary(const Mdp& mdp) { return augment(mdp, AugMode::Binary); }

AugmentedMdp augment_counting(const Mdp& mdp) { return augment(mdp, AugMode::Counting); }

} // namespace ccmdp
