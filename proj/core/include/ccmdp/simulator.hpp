#pragma once

#include "ccmdp/mdp.hpp"
#include "ccmdp/policy.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccmdp {

/**
 * SplitMix64 stream. Trajectory k of a run seeded with s draws from an
 * independent substream derived from (s, k), so serial and parallel
 * executions produce the same samples.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    static std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
        g.next();
        return g.next();
    }

private:
    std::uint64_t state_;
};

struct SimConfig {
    long num_trajectories = 100000;
    std::uint64_t seed = 0;
    bool record_paths = false;
};

struct SimStats {
    int horizon = 0;
    long num_trajectories = 0;
    std::vector<double> alarm_count_pmf; // index k: fraction of runs with k alarms, k = 0..T
    double mean_reward = 0.0;
    std::vector<std::vector<int>> paths; // only when record_paths; paths[k][t]
    // mean state trajectories conditioned on (>=1 alarm) / (no alarm); absent
    // when the conditioning event has no trajectories
    std::optional<std::vector<double>> mean_state_alarmed;
    std::optional<std::vector<double>> mean_state_clean;
    long alarmed_trajectories = 0;
    long clean_trajectories = 0;
};

/**
 * Monte Carlo rollout of a history policy: each trajectory starts at the
 * initial state, samples T actions and successors by inverse CDF over the
 * stored row order, and contributes its alarm count (visits to the alarm
 * region over t = 0..T) and reward sum. Deterministic in (mdp, policy, cfg).
 */
SimStats simulate(const Mdp& mdp, const HistoryPolicy& policy, const SimConfig& cfg);

/// Fraction of trajectories with at least min_alarms alarms.
double empirical_chance(const SimStats& stats, int min_alarms);

// Plot-ready CSV renderings.
std::string alarm_pmf_csv(const SimStats& stats);              // count,probability
std::string paths_csv(const SimStats& stats);                  // trajectory,t,state
std::string conditional_means_csv(const SimStats& stats);      // t,mean_alarm,mean_noalarm

} // namespace ccmdp
