#include "ccmdp/builtin.hpp"

#include "ccmdp/errors.hpp"

namespace ccmdp {
namespace builtin {

Mdp appendix_mdp() {
    Mdp m = make_mdp(7, 2, 3);
    for (int a = 0; a < 2; ++a) {
        m.p(0, a, 1) = 0.75;
        m.p(0, a, 2) = 0.25;
        m.p(1, a, 3) = 1.0;
        m.p(2, a, 3) = 1.0;
        for (int s : {4, 5, 6}) m.p(s, a, s) = 1.0;
    }
    m.p(3, 0, 4) = 1.0; // safe: reward 1 at the end
    m.p(3, 1, 5) = 0.5; // risky: reward 10 ...
    m.p(3, 1, 6) = 0.5; // ... or an alarm and nothing
    m.terminal_reward[4] = 1.0;
    m.terminal_reward[5] = 10.0;
    m.alarm_states = {2, 6};
    m.initial_state = 0;
    return m;
}

Mdp section5_mdp() {
    const int S = 16, A = 3, T = 15;
    Mdp m = make_mdp(S, A, T);

    auto add = [&](int x, int a, int value_to, double p) {
        const int to = std::min(value_to, S) - 1; // overflow at the top sticks
        m.p(x, a, to) += p;
    };
    for (int x = 0; x < S; ++x) {
        const int v = x + 1;
        if (v == 1) {
            add(x, 0, v + 1, 0.8);
            add(x, 0, v, 0.2);
            for (int a : {1, 2}) {
                add(x, a, v + 1, 0.2);
                add(x, a, v, 0.8);
            }
        } else {
            add(x, 0, v + 1, 0.8);
            add(x, 0, v, 0.1);
            add(x, 0, v - 1, 0.1);
            add(x, 1, v + 1, 0.1);
            add(x, 1, v, 0.8);
            add(x, 1, v - 1, 0.1);
            add(x, 2, v + 1, 0.1);
            add(x, 2, v, 0.1);
            add(x, 2, v - 1, 0.8);
        }
    }
    for (int t = 0; t < T; ++t)
        for (int x = 0; x < S; ++x)
            for (int a = 0; a < A; ++a) m.rewards[t][x * A + a] = x + 1; // |x| with values 1..16
    for (int x = 0; x < S; ++x) m.terminal_reward[x] = x + 1;
    for (int v = 6; v <= 16; ++v) m.alarm_states.push_back(v - 1);
    m.initial_state = 0; // value 1, the reference
    return m;
}

Mdp by_name(const std::string& name) {
    std::string key = name;
    if (key.rfind("builtin:", 0) == 0) key = key.substr(8);
    if (key == "appendix") return appendix_mdp();
    if (key == "section5") return section5_mdp();
    throw InputError("unknown built-in model '" + name + "' (expected appendix or section5)");
}

} // namespace builtin
} // namespace ccmdp
