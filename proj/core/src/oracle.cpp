#include "ccmdp/oracle.hpp"

#include "ccmdp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ccmdp {

double backward_induction_value(const Mdp& mdp) {
    require_valid(mdp, "backward induction input");
    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    std::vector<double> value = mdp.terminal_reward;
    std::vector<double> next(S);
    for (int t = mdp.horizon - 1; t >= 0; --t) {
        for (int x = 0; x < S; ++x) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < A; ++a) {
                double q = mdp.reward(t, x, a);
                for (int xp = 0; xp < S; ++xp) {
                    const double p = mdp.p(x, a, xp);
                    if (p != 0.0) q += p * value[xp];
                }
                best = std::max(best, q);
            }
            next[x] = best;
        }
        value.swap(next);
    }
    return value[mdp.initial_state];
}

OccupationMeasure forward_propagate(const Mdp& mdp, const MarkovPolicy& policy) {
    if (policy.num_states != mdp.num_states || policy.num_actions != mdp.num_actions ||
        policy.horizon != mdp.horizon)
        throw InputError("policy dimensions do not match the MDP");

    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    const int T = mdp.horizon;
    OccupationMeasure rho = make_occupation(T, S, A);

    std::vector<double> mu(S, 0.0), mu_next(S);
    mu[mdp.initial_state] = 1.0;
    for (int t = 0; t < T; ++t) {
        std::fill(mu_next.begin(), mu_next.end(), 0.0);
        for (int x = 0; x < S; ++x) {
            if (mu[x] == 0.0) continue;
            for (int a = 0; a < A; ++a) {
                const double mass = mu[x] * policy.prob(t, x, a);
                if (mass == 0.0) continue;
                rho.at(t, x, a) = mass;
                for (int xp = 0; xp < S; ++xp) {
                    const double p = mdp.p(x, a, xp);
                    if (p != 0.0) mu_next[xp] += mass * p;
                }
            }
        }
        mu.swap(mu_next);
    }
    rho.terminal = mu;
    return rho;
}

namespace {

// Tree of kernel-positive path prefixes. Action nodes are LP columns; state
// nodes at depth >= 1 carry the kernel-consistency rows.
struct PathTree {
    struct StateNode {
        int parent_action = -1; // -1 for the root
        int state = 0;
        int alarms = 0;
        double kernel_prob = 1.0; // P(x_t | x_{t-1}, a_{t-1})
        int row = -1;             // consistency row (depth >= 1)
        int depth = 0;
    };
    struct ActionNode {
        int parent_state = 0;
        int action = 0;
    };
    std::vector<StateNode> states;
    std::vector<ActionNode> actions;
    std::vector<std::vector<int>> action_level; // action node ids per depth
    int num_rows = 0;
};

PathTree build_path_tree(const Mdp& mdp, long max_variables) {
    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    const int T = mdp.horizon;
    const auto alarm = alarm_mask(mdp);

    PathTree tree;
    tree.action_level.resize(T);

    PathTree::StateNode root;
    root.state = mdp.initial_state;
    root.alarms = alarm[mdp.initial_state] ? 1 : 0;
    tree.states.push_back(root);

    std::vector<int> frontier = {0}; // state node ids at the current depth
    int rows = 1;                    // row 0: initial mass
    for (int t = 0; t < T; ++t) {
        for (int sn : frontier) {
            for (int a = 0; a < A; ++a) {
                if (static_cast<long>(tree.actions.size()) >= max_variables)
                    throw ResourceLimitError("path LP exceeds the variable limit");
                tree.actions.push_back({sn, a});
                tree.action_level[t].push_back(static_cast<int>(tree.actions.size()) - 1);
            }
        }
        if (t == T - 1) break;
        std::vector<int> next_frontier;
        const int level_base = tree.action_level[t][0]; // contiguous per level, A per state node
        for (std::size_t fi = 0; fi < frontier.size(); ++fi) {
            const int sn = frontier[fi];
            const int x = tree.states[sn].state;
            for (int a = 0; a < A; ++a) {
                const int an = level_base + static_cast<int>(fi) * A + a;
                for (int xp = 0; xp < S; ++xp) {
                    const double p = mdp.p(x, a, xp);
                    if (p == 0.0) continue;
                    PathTree::StateNode node;
                    node.parent_action = an;
                    node.state = xp;
                    node.alarms = tree.states[sn].alarms + (alarm[xp] ? 1 : 0);
                    node.kernel_prob = p;
                    node.row = rows++;
                    node.depth = t + 1;
                    tree.states.push_back(node);
                    next_frontier.push_back(static_cast<int>(tree.states.size()) - 1);
                }
            }
        }
        frontier.swap(next_frontier);
    }
    tree.num_rows = rows;
    return tree;
}

} // namespace

PathLpResult solve_path_lp_status(const Mdp& mdp, std::span<const double> deltas,
                                  const PathLpOptions& options) {
    require_valid(mdp, "path LP input");
    if (deltas.empty() || static_cast<int>(deltas.size()) > mdp.horizon)
        throw InputError("expected between 1 and T chance bounds");
    for (double d : deltas)
        if (!(d >= 0.0 && d <= 1.0)) throw InputError("every delta must lie in [0,1]");

    const int S = mdp.num_states;
    const int T = mdp.horizon;
    const auto alarm = alarm_mask(mdp);
    const PathTree tree = build_path_tree(mdp, options.max_variables);

    LpProblem lp;
    lp.num_vars = static_cast<int>(tree.actions.size());
    lp.objective.assign(lp.num_vars, 0.0);
    lp.lower.assign(lp.num_vars, 0.0);
    lp.upper.assign(lp.num_vars, 1.0);
    lp.eq_rhs.assign(tree.num_rows, 0.0);
    lp.eq_rhs[0] = 1.0;
    lp.ineq_rhs.assign(deltas.begin(), deltas.end());

    // each action node enters its own level row ...
    for (int j = 0; j < lp.num_vars; ++j) {
        const auto& an = tree.actions[j];
        const auto& sn = tree.states[an.parent_state];
        const int row = sn.depth == 0 ? 0 : sn.row;
        lp.equalities.push_back({row, j, 1.0});
        lp.objective[j] = mdp.reward(sn.depth, sn.state, an.action);
    }
    // ... and its children's rows with the negated kernel weight
    for (const auto& sn : tree.states) {
        if (sn.parent_action < 0) continue;
        lp.equalities.push_back({sn.row, sn.parent_action, -sn.kernel_prob});
    }
    // terminal rewards and chance rows fold onto the last action level
    for (int j : tree.action_level[T - 1]) {
        const auto& an = tree.actions[j];
        const auto& sn = tree.states[an.parent_state];
        double terminal = 0.0;
        std::vector<double> chance(deltas.size(), 0.0);
        for (int xp = 0; xp < S; ++xp) {
            const double p = mdp.p(sn.state, an.action, xp);
            if (p == 0.0) continue;
            terminal += p * mdp.terminal_reward[xp];
            const int final_alarms = sn.alarms + (alarm[xp] ? 1 : 0);
            for (std::size_t i = 0; i < deltas.size(); ++i)
                if (final_alarms >= static_cast<int>(i) + 1) chance[i] += p;
        }
        lp.objective[j] += terminal;
        for (std::size_t i = 0; i < deltas.size(); ++i)
            if (chance[i] != 0.0)
                lp.inequalities.push_back({static_cast<int>(i), j, chance[i]});
    }

    const LpSolution sol = solve(lp, options.solver);
    return {sol.status, sol.status == SolveStatus::Optimal ? sol.objective : 0.0};
}

double solve_path_lp(const Mdp& mdp, std::span<const double> deltas, const PathLpOptions& options) {
    const PathLpResult result = solve_path_lp_status(mdp, deltas, options);
    if (result.status != SolveStatus::Optimal)
        throw InputError(std::string("path LP is ") + to_string(result.status));
    return result.value;
}

namespace {

// Actions with identical kernel rows and rewards at (t, x) are
// interchangeable; gridding only distinct classes keeps the search small.
struct GridRow {
    int t = 0;
    int x = 0;
    std::vector<std::vector<int>> classes;
};

std::vector<std::vector<double>> enumerate_weights(int num_classes, int resolution) {
    // all compositions of `resolution` into num_classes parts, as probabilities
    std::vector<std::vector<double>> out;
    std::vector<int> parts(num_classes, 0);
    auto recurse = [&](auto&& self, int idx, int remaining) -> void {
        if (idx == num_classes - 1) {
            parts[idx] = remaining;
            std::vector<double> w(num_classes);
            for (int c = 0; c < num_classes; ++c)
                w[c] = static_cast<double>(parts[c]) / resolution;
            out.push_back(std::move(w));
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            parts[idx] = k;
            self(self, idx + 1, remaining - k);
        }
    };
    recurse(recurse, 0, resolution);
    return out;
}

} // namespace

double markov_grid_search(const Mdp& mdp, double delta, int grid_resolution,
                          const GridSearchOptions& options) {
    require_valid(mdp, "grid search input");
    if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0,1]");
    if (grid_resolution < 1) throw InputError("grid resolution must be at least 1");

    const int S = mdp.num_states;
    const int A = mdp.num_actions;
    const int T = mdp.horizon;
    const auto alarm = alarm_mask(mdp);

    // forward reachability per time step
    std::vector<std::vector<char>> reachable(T, std::vector<char>(S, 0));
    reachable[0][mdp.initial_state] = 1;
    for (int t = 0; t + 1 < T; ++t)
        for (int x = 0; x < S; ++x) {
            if (!reachable[t][x]) continue;
            for (int a = 0; a < A; ++a)
                for (int xp = 0; xp < S; ++xp)
                    if (mdp.p(x, a, xp) != 0.0) reachable[t + 1][xp] = 1;
        }

    // effective rows: reachable (t, x) with at least two action classes
    std::vector<GridRow> rows;
    std::vector<std::vector<int>> row_of(T, std::vector<int>(S, -1));
    for (int t = 0; t < T; ++t) {
        for (int x = 0; x < S; ++x) {
            if (!reachable[t][x]) continue;
            std::vector<std::vector<int>> classes;
            for (int a = 0; a < A; ++a) {
                bool placed = false;
                for (auto& cls : classes) {
                    const int rep = cls.front();
                    bool same = mdp.reward(t, x, a) == mdp.reward(t, x, rep);
                    for (int xp = 0; same && xp < S; ++xp)
                        if (mdp.p(x, a, xp) != mdp.p(x, rep, xp)) same = false;
                    if (same) {
                        cls.push_back(a);
                        placed = true;
                        break;
                    }
                }
                if (!placed) classes.push_back({a});
            }
            if (classes.size() > 1) {
                row_of[t][x] = static_cast<int>(rows.size());
                rows.push_back({t, x, classes});
            }
        }
    }

    // per-row weight grids; candidate space is their product
    std::vector<std::vector<std::vector<double>>> weights;
    double candidates = 1.0;
    for (const auto& row : rows) {
        weights.push_back(enumerate_weights(static_cast<int>(row.classes.size()), grid_resolution));
        candidates *= static_cast<double>(weights.back().size());
        if (candidates > static_cast<double>(options.max_candidates))
            throw ResourceLimitError("grid search candidate space too large");
    }

    // enumerate class-level paths once
    struct Path {
        double kernel_prob;
        double reward;
        bool alarmed;
        std::vector<std::pair<int, int>> refs; // (effective row id, class index)
    };
    std::vector<Path> paths;
    struct Frame {
        int t, x, alarms;
        double prob, reward;
    };
    std::vector<std::pair<int, int>> refs;
    auto dfs = [&](auto&& self, const Frame& f) -> void {
        if (f.t == T) {
            if (static_cast<long>(paths.size()) >= options.max_paths)
                throw ResourceLimitError("grid search path space too large");
            Path p;
            p.kernel_prob = f.prob;
            p.reward = f.reward + mdp.terminal_reward[f.x];
            p.alarmed = f.alarms > 0;
            p.refs = refs;
            paths.push_back(std::move(p));
            return;
        }
        const int row = row_of[f.t][f.x];
        const int num_classes = row >= 0 ? static_cast<int>(rows[row].classes.size()) : 1;
        for (int c = 0; c < num_classes; ++c) {
            // single-class rows carry total class probability 1; effective
            // rows get their class weight at candidate-evaluation time
            int rep = 0;
            if (row >= 0) {
                rep = rows[row].classes[c].front();
                refs.push_back({row, c});
            }
            for (int xp = 0; xp < S; ++xp) {
                const double p = mdp.p(f.x, rep, xp);
                if (p == 0.0) continue;
                Frame next;
                next.t = f.t + 1;
                next.x = xp;
                next.alarms = f.alarms + (alarm[xp] ? 1 : 0);
                next.prob = f.prob * p;
                next.reward = f.reward + mdp.reward(f.t, f.x, rep);
                self(self, next);
            }
            if (row >= 0) refs.pop_back();
        }
    };
    Frame root{0, mdp.initial_state, alarm[mdp.initial_state] ? 1 : 0, 1.0, 0.0};
    dfs(dfs, root);

    if (candidates * static_cast<double>(paths.size()) > static_cast<double>(options.max_work))
        throw ResourceLimitError("grid search work bound exceeded");

    // odometer over the per-row weight lists
    std::vector<std::size_t> pick(rows.size(), 0);
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        double objective = 0.0, alarm_prob = 0.0;
        for (const auto& path : paths) {
            double prob = path.kernel_prob;
            for (const auto& [row, cls] : path.refs) prob *= weights[row][pick[row]][cls];
            objective += prob * path.reward;
            if (path.alarmed) alarm_prob += prob;
        }
        if (alarm_prob <= delta + options.feasibility_slack) best = std::max(best, objective);

        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == weights[k].size()) pick[k++] = 0;
        if (k == pick.size()) break;
    }
    return best;
}

} // namespace ccmdp
