#include "ccmdp/simulator.hpp"

#include "ccmdp/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ccmdp {

namespace {

// Inverse-CDF sample over a probability row; cumulative ties resolve to the
// lowest index, and any rounding shortfall falls to the last positive entry.
int sample_row(const double* row, int n, double u) {
    double cum = 0.0;
    int last_positive = 0;
    for (int i = 0; i < n; ++i) {
        if (row[i] <= 0.0) continue;
        cum += row[i];
        last_positive = i;
        if (u <= cum) return i;
    }
    return last_positive;
}

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

SimStats simulate(const Mdp& mdp, const HistoryPolicy& policy, const SimConfig& cfg) {
    if (policy.base_states != mdp.num_states || policy.horizon() != mdp.horizon ||
        policy.inner.num_actions != mdp.num_actions)
        throw InputError("policy dimensions do not match the MDP");
    if (cfg.num_trajectories < 1) throw InputError("num_trajectories must be at least 1");

    const int T = mdp.horizon;
    const int A = mdp.num_actions;
    const auto alarm = alarm_mask(mdp);

    SimStats stats;
    stats.horizon = T;
    stats.num_trajectories = cfg.num_trajectories;
    stats.alarm_count_pmf.assign(T + 1, 0.0);
    std::vector<long> count_hist(T + 1, 0);
    std::vector<double> sum_state_alarmed(T + 1, 0.0), sum_state_clean(T + 1, 0.0);
    double reward_sum = 0.0;
    if (cfg.record_paths) stats.paths.reserve(cfg.num_trajectories);

    std::vector<int> path(T + 1);
    auto tracker = policy.tracker();
    for (long k = 0; k < cfg.num_trajectories; ++k) {
        SplitMix64 rng(SplitMix64::substream_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        int x = mdp.initial_state;
        int alarms = alarm[x] ? 1 : 0;
        double reward = 0.0;
        tracker.reset(x);
        path[0] = x;
        for (int t = 0; t < T; ++t) {
            const auto dist = tracker.distribution(t, x);
            const int a = sample_row(dist.data(), A, rng.next_double());
            reward += mdp.reward(t, x, a);
            const int xp = sample_row(&mdp.transition[static_cast<std::size_t>(x * A + a) * mdp.num_states],
                                      mdp.num_states, rng.next_double());
            x = xp;
            tracker.observe(x);
            if (alarm[x]) ++alarms;
            path[t + 1] = x;
        }
        reward += mdp.terminal_reward[x];
        reward_sum += reward;
        ++count_hist[std::min(alarms, T)];
        auto& sums = alarms > 0 ? sum_state_alarmed : sum_state_clean;
        for (int t = 0; t <= T; ++t) sums[t] += path[t];
        if (alarms > 0)
            ++stats.alarmed_trajectories;
        else
            ++stats.clean_trajectories;
        if (cfg.record_paths) stats.paths.push_back(path);
    }

    for (int k = 0; k <= T; ++k)
        stats.alarm_count_pmf[k] = static_cast<double>(count_hist[k]) / cfg.num_trajectories;
    stats.mean_reward = reward_sum / cfg.num_trajectories;
    if (stats.alarmed_trajectories > 0) {
        for (double& v : sum_state_alarmed) v /= stats.alarmed_trajectories;
        stats.mean_state_alarmed = std::move(sum_state_alarmed);
    }
    if (stats.clean_trajectories > 0) {
        for (double& v : sum_state_clean) v /= stats.clean_trajectories;
        stats.mean_state_clean = std::move(sum_state_clean);
    }
    return stats;
}

double empirical_chance(const SimStats& stats, int min_alarms) {
    if (min_alarms < 0 || min_alarms > stats.horizon)
        throw InputError("min_alarms must lie in 0..T");
    double tail = 0.0;
    for (int k = min_alarms; k <= stats.horizon; ++k) tail += stats.alarm_count_pmf[k];
    return min_alarms == 0 ? 1.0 : tail;
}

std::string alarm_pmf_csv(const SimStats& stats) {
    std::string out = "count,probability\n";
    for (int k = 0; k <= stats.horizon; ++k) {
        out += std::to_string(k);
        out += ',';
        append_double(out, stats.alarm_count_pmf[k]);
        out += '\n';
    }
    return out;
}

std::string paths_csv(const SimStats& stats) {
    std::string out = "trajectory,t,state\n";
    for (std::size_t k = 0; k < stats.paths.size(); ++k) {
        for (std::size_t t = 0; t < stats.paths[k].size(); ++t) {
            out += std::to_string(k);
            out += ',';
            out += std::to_string(t);
            out += ',';
            out += std::to_string(stats.paths[k][t]);
            out += '\n';
        }
    }
    return out;
}

std::string conditional_means_csv(const SimStats& stats) {
    std::string out = "t,mean_alarm,mean_noalarm\n";
    for (int t = 0; t <= stats.horizon; ++t) {
        out += std::to_string(t);
        out += ',';
        if (stats.mean_state_alarmed) append_double(out, (*stats.mean_state_alarmed)[t]);
        out += ',';
        if (stats.mean_state_clean) append_double(out, (*stats.mean_state_clean)[t]);
        out += '\n';
    }
    return out;
}

} // namespace ccmdp
