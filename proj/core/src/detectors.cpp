#include "ccmdp/detectors.hpp"

#include "ccmdp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccmdp {

namespace {

void check_plant(const FinitePlant& plant, int horizon) {
    if (plant.num_states <= 0 || plant.num_actions <= 0)
        throw InputError("plant must have positive state and action counts");
    const std::size_t want =
        static_cast<std::size_t>(plant.num_states) * plant.num_actions * plant.num_states;
    if (plant.kernel.size() != want) throw InputError("plant kernel has wrong shape");
    for (int z = 0; z < plant.num_states; ++z)
        for (int a = 0; a < plant.num_actions; ++a) {
            double sum = 0.0;
            for (int zp = 0; zp < plant.num_states; ++zp) {
                const double v = plant.p(z, a, zp);
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw InputError("plant kernel entries must be finite and nonnegative");
                sum += v;
            }
            if (std::fabs(sum - 1.0) > kRowSumTolerance)
                throw InputError("plant kernel rows must sum to 1");
        }
    if (static_cast<int>(plant.outputs.size()) != plant.num_states)
        throw InputError("plant outputs must list one value per state");
    if (static_cast<int>(plant.nominal_outputs.size()) != horizon + 1)
        throw InputError("nominal_outputs must have length horizon+1");
    for (double v : plant.outputs)
        if (!std::isfinite(v)) throw InputError("plant outputs must be finite");
    for (double v : plant.nominal_outputs)
        if (!std::isfinite(v)) throw InputError("nominal outputs must be finite");
    if (plant.initial_state < 0 || plant.initial_state >= plant.num_states)
        throw InputError("plant initial state out of range");
}

void check_detector(const DetectorSpec& det) {
    if (!(det.threshold > 0.0)) throw InputError("detector threshold must be positive");
    if (det.kind == DetectorSpec::Kind::Cusum) {
        if (!(det.bias > 0.0)) throw InputError("cusum bias must be positive");
        if (det.grid.empty() || det.grid.front() != 0.0)
            throw InputError("cusum grid must be ascending and start at 0");
        for (std::size_t i = 1; i < det.grid.size(); ++i)
            if (!(det.grid[i] > det.grid[i - 1]))
                throw InputError("cusum grid must be strictly ascending");
        if (det.max_level != det.grid.back())
            throw InputError("cusum max_level must equal the top grid level");
    }
}

bool nominal_is_constant(const FinitePlant& plant) {
    for (double v : plant.nominal_outputs)
        if (v != plant.nominal_outputs[0]) return false;
    return true;
}

} // namespace

double cusum_projection_step_bound(std::span<const double> grid) {
    double widest = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) widest = std::max(widest, grid[i] - grid[i - 1]);
    return widest / 2.0;
}

bool chi2_alarm(int plant_state, int t, const FinitePlant& plant, double threshold) {
    const double residual = plant.outputs[plant_state] - plant.nominal_outputs[t];
    return residual * residual > threshold;
}

double cusum_exact_step(double level, double residual, double bias) {
    return std::max(0.0, level + std::fabs(residual) - bias);
}

double cusum_step(double level, double residual, double bias, std::span<const double> grid,
                  double max_level) {
    const double exact = std::min(cusum_exact_step(level, residual, bias), max_level);
    // nearest grid level, ties to the lower one
    double best = grid[0];
    double best_dist = std::fabs(exact - grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double dist = std::fabs(exact - grid[i]);
        if (dist < best_dist) {
            best = grid[i];
            best_dist = dist;
        }
    }
    return best;
}

ComposedMdp compose(const FinitePlant& plant, const DetectorSpec& detector,
                    const PlantRewards& rewards, int horizon) {
    if (horizon <= 0) throw InputError("horizon must be positive");
    check_plant(plant, horizon);
    check_detector(detector);
    if (static_cast<int>(rewards.step.size()) != horizon)
        throw InputError("rewards.step must have one table per step");
    const std::size_t want_row = static_cast<std::size_t>(plant.num_states) * plant.num_actions;
    for (const auto& table : rewards.step)
        if (table.size() != want_row) throw InputError("rewards.step table has wrong shape");
    if (static_cast<int>(rewards.terminal.size()) != plant.num_states)
        throw InputError("rewards.terminal has wrong shape");

    const bool cusum = detector.kind == DetectorSpec::Kind::Cusum;
    const bool time_indexed = !nominal_is_constant(plant);
    const int Z = plant.num_states;
    const int A = plant.num_actions;
    const int L = cusum ? static_cast<int>(detector.grid.size()) : 1;
    const int TI = time_indexed ? horizon + 1 : 1;

    if (cusum) {
        // the grid must be able to express a sub-threshold nonzero level,
        // otherwise every run is either silent or instantly saturated
        bool representable = false;
        for (double g : detector.grid)
            if (g > 0.0 && g <= detector.threshold) representable = true;
        if (!representable) {
            std::ostringstream os;
            os << "cusum grid too coarse: no level lies in (0, " << detector.threshold
               << "]; refine the grid below the threshold";
            throw ConfigError(os.str());
        }
    }

    ComposedMdp composed;
    composed.plant_states = Z;
    composed.num_levels = L;
    composed.time_indexed = time_indexed;
    composed.mdp = make_mdp(Z * L * TI, A, horizon);
    Mdp& m = composed.mdp;

    for (int ti = 0; ti < TI; ++ti) {
        const int t_now = time_indexed ? ti : 0;
        const int t_next = time_indexed ? std::min(ti + 1, horizon) : 0;
        for (int level = 0; level < L; ++level) {
            for (int z = 0; z < Z; ++z) {
                const int from = composed.index_of(z, level, ti);
                int next_level = level;
                if (cusum) {
                    const double residual = plant.outputs[z] - plant.nominal_outputs[t_now];
                    const double updated = cusum_step(detector.grid[level], residual, detector.bias,
                                                      detector.grid, detector.max_level);
                    next_level = static_cast<int>(
                        std::lower_bound(detector.grid.begin(), detector.grid.end(), updated) -
                        detector.grid.begin());
                }
                for (int a = 0; a < A; ++a)
                    for (int zp = 0; zp < Z; ++zp) {
                        const double p = plant.p(z, a, zp);
                        if (p != 0.0) m.p(from, a, composed.index_of(zp, next_level, t_next)) += p;
                    }
            }
        }
    }

    for (int t = 0; t < horizon; ++t)
        for (int ti = 0; ti < TI; ++ti)
            for (int level = 0; level < L; ++level)
                for (int z = 0; z < Z; ++z)
                    for (int a = 0; a < A; ++a)
                        m.rewards[t][composed.index_of(z, level, ti) * A + a] =
                            rewards.step[t][z * A + a];
    for (int ti = 0; ti < TI; ++ti)
        for (int level = 0; level < L; ++level)
            for (int z = 0; z < Z; ++z)
                m.terminal_reward[composed.index_of(z, level, ti)] = rewards.terminal[z];

    // alarm region: detector decision fires at the composed state
    for (int ti = 0; ti < TI; ++ti)
        for (int level = 0; level < L; ++level)
            for (int z = 0; z < Z; ++z) {
                bool alarms;
                if (cusum)
                    alarms = detector.grid[level] > detector.threshold;
                else
                    alarms = chi2_alarm(z, time_indexed ? ti : 0, plant, detector.threshold);
                if (alarms) m.alarm_states.push_back(composed.index_of(z, level, ti));
            }
    std::sort(m.alarm_states.begin(), m.alarm_states.end());

    m.initial_state = composed.index_of(plant.initial_state, 0, 0);
    return composed;
}

} // namespace ccmdp
