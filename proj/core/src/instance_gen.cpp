#include "ccmdp/instance_gen.hpp"

#include "ccmdp/simulator.hpp"

#include <algorithm>

namespace ccmdp {

namespace {

int draw(SplitMix64& rng, int n) { return static_cast<int>(rng.next() % static_cast<std::uint64_t>(n)); }

// point mass or a two-point branch with an exact eighth weight
void fill_row(SplitMix64& rng, Mdp& m, int x, int a) {
    const int S = m.num_states;
    for (int xp = 0; xp < S; ++xp) m.p(x, a, xp) = 0.0;
    if (draw(rng, 2) == 0 || S == 1) {
        m.p(x, a, draw(rng, S)) = 1.0;
        return;
    }
    const int t1 = draw(rng, S);
    const int t2 = (t1 + 1 + draw(rng, S - 1)) % S;
    const double p = (1 + draw(rng, 7)) / 8.0;
    m.p(x, a, t1) = p;
    m.p(x, a, t2) += 1.0 - p;
}

// Generic sparse instance: one or two states where actions genuinely differ,
// identical rows elsewhere so the Markov policy grid stays enumerable.
Mdp generic_instance(SplitMix64& rng) {
    const int S = 2 + draw(rng, 3);
    const int A = 2 + draw(rng, 2);
    const int T = 2 + draw(rng, 3);
    Mdp m = make_mdp(S, A, T);
    m.initial_state = 0;

    for (int x = 1; x < S; ++x)
        if (draw(rng, 8) < 3) m.alarm_states.push_back(x);

    std::vector<char> decision(S, 0);
    decision[draw(rng, S)] = 1;
    if (draw(rng, 2) == 0) decision[draw(rng, S)] = 1;

    for (int x = 0; x < S; ++x) {
        fill_row(rng, m, x, 0);
        for (int a = 1; a < A; ++a) {
            if (decision[x]) {
                fill_row(rng, m, x, a);
            } else {
                for (int xp = 0; xp < S; ++xp) m.p(x, a, xp) = m.p(x, 0, xp);
            }
        }
    }

    for (int t = 0; t < T; ++t)
        for (int x = 0; x < S; ++x) {
            if (decision[x]) {
                for (int a = 0; a < A; ++a) m.rewards[t][x * A + a] = draw(rng, 5);
            } else {
                const double r = draw(rng, 5);
                for (int a = 0; a < A; ++a) m.rewards[t][x * A + a] = r;
            }
        }
    for (int x = 0; x < S; ++x) m.terminal_reward[x] = draw(rng, 9);
    return m;
}

// Funnel instance: an uncontrolled branch that may alarm, both branches
// rejoining in a hub, and a final safe-vs-risky choice at the hub. The
// optimal mixing at the hub depends on whether the early branch alarmed,
// which Markov policies on the original space cannot express.
struct Funnel {
    Mdp mdp;
    int branch_eighths;      // P(clean branch) * 8
    int risky_alarm_eighths; // P(risky action alarms) * 8
};

Funnel funnel_instance(SplitMix64& rng) {
    const int S = 4;
    const int A = 2 + draw(rng, 2);
    const int T = 3 + draw(rng, 2);
    Mdp m = make_mdp(S, A, T);
    m.initial_state = 0;
    m.alarm_states = {2};

    const int clean8 = 5 + draw(rng, 3); // P(clean) in {5/8, 6/8, 7/8}
    const int risky8 = 3 + draw(rng, 3); // P(risky alarms) in {3/8, 4/8, 5/8}

    for (int a = 0; a < A; ++a) {
        m.p(0, a, 1) = clean8 / 8.0;
        m.p(0, a, 2) = 1.0 - clean8 / 8.0;
        m.p(1, a, 3) = 1.0;
        m.p(2, a, 3) = 1.0;
    }
    // hub: action 0 stays put, the rest gamble on the lucky state
    m.p(3, 0, 3) = 1.0;
    m.p(3, 1, 1) = 1.0 - risky8 / 8.0;
    m.p(3, 1, 2) = risky8 / 8.0;
    if (A == 3) {
        const int risky2 = 2 + draw(rng, 5);
        m.p(3, 2, 1) = 1.0 - risky2 / 8.0;
        m.p(3, 2, 2) = risky2 / 8.0;
    }

    for (int t = 0; t < T; ++t)
        for (int x = 0; x < S; ++x) {
            const double r = draw(rng, 3);
            for (int a = 0; a < A; ++a) m.rewards[t][x * A + a] = r;
        }
    m.terminal_reward[0] = draw(rng, 3);
    m.terminal_reward[1] = 4 + draw(rng, 5); // lucky payoff
    m.terminal_reward[2] = 0;
    m.terminal_reward[3] = 1 + draw(rng, 3); // safe payoff

    return {std::move(m), clean8, risky8};
}

} // namespace

RandomInstance random_tiny_instance(std::uint64_t seed) {
    SplitMix64 rng(SplitMix64::substream_seed(0x715AD1E5u, seed));
    RandomInstance inst;

    if (draw(rng, 2) == 0) {
        Funnel funnel = funnel_instance(rng);
        // a bound between P(forced alarm) and the all-risky alarm probability
        // keeps the instance feasible but the hub choice contested
        const int lo64 = 8 * (8 - funnel.branch_eighths);
        const int hi64 = lo64 + funnel.branch_eighths * funnel.risky_alarm_eighths;
        std::vector<int> eighths;
        for (int k = 1; k <= 8; ++k)
            if (8 * k > lo64 && 8 * k < hi64) eighths.push_back(k);
        inst.delta = eighths.empty() ? 1.0 : eighths[draw(rng, static_cast<int>(eighths.size()))] / 8.0;
        inst.mdp = std::move(funnel.mdp);
    } else {
        inst.mdp = generic_instance(rng);
        inst.delta = (1 + draw(rng, 8)) / 8.0;
    }

    const int T = inst.mdp.horizon;
    inst.deltas.resize(T);
    double previous = inst.delta;
    for (int i = 0; i < T; ++i) {
        previous = std::min(previous, (1 + draw(rng, 8)) / 8.0);
        inst.deltas[i] = previous;
    }
    return inst;
}

} // namespace ccmdp
