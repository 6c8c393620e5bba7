#pragma once

#include "ccmdp/augmentation.hpp"
#include "ccmdp/occupation.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ccmdp {

/// Row-sum tolerance for policy tables.
inline constexpr double kPolicyRowTolerance = 1e-12;

/**
 * Time-indexed randomized decision table pi_t(a|x) for t = 0..T-1. The state
 * space may be a base or an augmented one.
 */
struct MarkovPolicy {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> tables; // [t][x][a]

    double prob(int t, int x, int a) const {
        return tables[(static_cast<std::size_t>(t) * num_states + x) * num_actions + a];
    }
    double& prob(int t, int x, int a) {
        return tables[(static_cast<std::size_t>(t) * num_states + x) * num_actions + a];
    }
    std::span<const double> row(int t, int x) const {
        return {tables.data() + (static_cast<std::size_t>(t) * num_states + x) * num_actions,
                static_cast<std::size_t>(num_actions)};
    }
};

MarkovPolicy make_markov_policy(int horizon, int num_states, int num_actions);

/// True iff every row is a probability distribution within kPolicyRowTolerance.
bool policy_rows_stochastic(const MarkovPolicy& policy);

/**
 * History-dependent policy on the base MDP obtained by running a Markov
 * policy for the augmented MDP and tracking the alarm statistic online. The
 * statistic (binary flag or saturating counter) is the only memory kept
 * beyond the current state.
 */
struct HistoryPolicy {
    MarkovPolicy inner; // over the augmented space, y-major layout
    AugMode mode = AugMode::Binary;
    int base_states = 0;
    int counter_cap = 1; // 1 for binary, T for counting
    std::vector<std::uint8_t> alarm; // base-space alarm mask

    int horizon() const { return inner.horizon; }

    /// Statistic update after observing the next base state.
    int advance(int statistic, int next_state) const {
        if (!alarm[next_state]) return statistic;
        return mode == AugMode::Binary ? 1 : std::min(statistic + 1, counter_cap);
    }

    /// Alarm statistic of a state prefix x_0..x_t.
    int statistic_of(std::span<const int> prefix) const;

    /// Action distribution given the full state prefix x_0..x_t (pure form).
    std::span<const double> distribution(int t, std::span<const int> prefix) const;

    /// Action distribution given the current state and a tracked statistic.
    std::span<const double> distribution_at(int t, int state, int statistic) const {
        return inner.row(t, statistic * base_states + state);
    }

    /// Per-trajectory tracker; cheap to copy, one instance per rollout.
    class Tracker {
    public:
        explicit Tracker(const HistoryPolicy& policy) : policy_(&policy) {}
        void reset(int initial_state) { statistic_ = policy_->alarm[initial_state] ? 1 : 0; }
        void observe(int next_state) { statistic_ = policy_->advance(statistic_, next_state); }
        int statistic() const { return statistic_; }
        std::span<const double> distribution(int t, int state) const {
            return policy_->distribution_at(t, state, statistic_);
        }

    private:
        const HistoryPolicy* policy_;
        int statistic_ = 0;
    };

    Tracker tracker() const { return Tracker(*this); }
};

/**
 * Recovers a Markov policy from an occupation measure by row normalization:
 * pi_t(a|x) = rho_t(x,a) / sum_a' rho_t(x,a') wherever the state mass exceeds
 * 1e-12; zero-mass rows get the uniform distribution.
 */
MarkovPolicy extract_policy(const AugmentedMdp& aug, const OccupationMeasure& rho);

/// Mass threshold below which extract_policy falls back to the uniform row.
inline constexpr double kExtractionMassFloor = 1e-12;

/**
 * Wraps a Markov policy for the augmented MDP as a history-dependent policy
 * on the base MDP; the action distribution after history x_0..x_t equals the
 * inner policy evaluated at (x_t, alarm statistic of the history).
 */
HistoryPolicy lift_policy(const MarkovPolicy& policy, const AugmentedMdp& aug);

} // namespace ccmdp
