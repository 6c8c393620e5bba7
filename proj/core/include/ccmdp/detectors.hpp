#pragma once

#include "ccmdp/mdp.hpp"

#include <span>
#include <vector>

namespace ccmdp {

/**
 * Finite plant with a scalar output map and a nominal output trajectory.
 * Noise is already marginalized into the kernel. Layout matches Mdp:
 * kernel[(z*num_actions + a)*num_states + z'].
 */
struct FinitePlant {
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> kernel;
    std::vector<double> outputs;         // y(z), one scalar per plant state
    std::vector<double> nominal_outputs; // y^n_t, length horizon+1
    int initial_state = 0;

    double p(int z, int a, int zp) const {
        return kernel[static_cast<std::size_t>(z * num_actions + a) * num_states + zp];
    }
};

struct DetectorSpec {
    enum class Kind { Chi2, Cusum };
    Kind kind = Kind::Chi2;
    double threshold = 0.0;        // tau, alarm strictly above
    double bias = 0.0;             // cusum only
    std::vector<double> grid;      // cusum detector levels, ascending from 0
    double max_level = 0.0;        // cusum saturation level, grid.back()
};

/// Per-step worst-case error of the nearest-level grid projection.
double cusum_projection_step_bound(std::span<const double> grid);

/// True iff the squared output residual at (z, t) strictly exceeds tau.
bool chi2_alarm(int plant_state, int t, const FinitePlant& plant, double threshold);

/// Exact update max(0, level + |residual| - bias).
double cusum_exact_step(double level, double residual, double bias);

/**
 * Grid-projected update: the exact update projected to the nearest grid
 * level (ties to the lower level) and capped at max_level.
 */
double cusum_step(double level, double residual, double bias, std::span<const double> grid,
                  double max_level);

/// Rewards over plant states, lifted to the composed state space.
struct PlantRewards {
    std::vector<std::vector<double>> step; // [t][z*num_actions+a], length horizon
    std::vector<double> terminal;          // [z]
};

/**
 * Product of a plant and a detector as a standard MDP: the plant moves by its
 * kernel, the detector state moves deterministically by its update rule, and
 * the alarm region collects the states whose detector decision fires. A
 * non-constant nominal output folds the time index into the state.
 */
struct ComposedMdp {
    Mdp mdp;
    int plant_states = 0;
    int num_levels = 1;       // 1 for chi2
    bool time_indexed = false;

    // state index layout: ((t_or_0 * num_levels) + level) * plant_states + z
    int index_of(int z, int level, int t) const {
        return ((time_indexed ? t : 0) * num_levels + level) * plant_states + z;
    }
};

ComposedMdp compose(const FinitePlant& plant, const DetectorSpec& detector,
                    const PlantRewards& rewards, int horizon);

} // namespace ccmdp
