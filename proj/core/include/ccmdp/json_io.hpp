#pragma once

#include "ccmdp/augmentation.hpp"
#include "ccmdp/detectors.hpp"
#include "ccmdp/mdp.hpp"
#include "ccmdp/policy.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ccmdp {

/**
 * Model interchange schema:
 * {"num_states", "num_actions", "horizon", "transition" [x][a][x'],
 *  "rewards" [t][x][a] (length T), "terminal_reward" [x],
 *  "alarm_states", "initial_state"}
 */
Mdp mdp_from_json(const std::string& text);
std::string mdp_to_json(const Mdp& mdp, int indent = 1);

/// Inner MDP schema plus "mode" and "index_map" (augmented index -> [x, y]).
std::string augmented_to_json(const AugmentedMdp& aug, int indent = 1);

/**
 * Policy schema: {"mode", "horizon", "tables" [t][xhat][a],
 * "index_map" (augmented index -> [x, y])}.
 */
struct PolicyFile {
    AugMode mode = AugMode::Binary;
    MarkovPolicy policy;
    std::vector<std::pair<int, int>> index_map;
};
std::string policy_to_json(const AugmentedMdp& aug, const MarkovPolicy& policy, int indent = 1);
PolicyFile policy_from_json(const std::string& text);

/**
 * Plant schema: {"plant_states", "actions", "kernel" [z][a][z'],
 * "outputs" [z], "nominal_outputs" (length horizon+1), "initial_state"}.
 * Detector schema: {"kind": "chi2"|"cusum", "threshold", and for cusum
 * "bias", "grid", "max_level"}.
 */
FinitePlant plant_from_json(const std::string& text);
std::string plant_to_json(const FinitePlant& plant, int indent = 1);
DetectorSpec detector_from_json(const std::string& text);
std::string detector_to_json(const DetectorSpec& detector, int indent = 1);

/// One-file composition input: {"plant", "detector", "horizon", "rewards", "terminal_reward"}.
struct ComposeSpec {
    FinitePlant plant;
    DetectorSpec detector;
    int horizon = 0;
    PlantRewards rewards;
};
ComposeSpec compose_spec_from_json(const std::string& text);

} // namespace ccmdp
