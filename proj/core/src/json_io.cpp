#include "ccmdp/json_io.hpp"

#include "ccmdp/errors.hpp"

#include <json.hpp>

namespace ccmdp {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

const json& field(const json& j, const char* name, const char* what) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError(std::string(what) + ": missing field '" + name + "'");
    return *it;
}

int int_field(const json& j, const char* name, const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_number_integer())
        throw InputError(std::string(what) + ": field '" + name + "' must be an integer");
    return f.get<int>();
}

double num_field(const json& j, const char* name, const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_number()) throw InputError(std::string(what) + ": field '" + name + "' must be a number");
    return f.get<double>();
}

std::vector<double> num_array(const json& j, const char* what, const std::string& where) {
    if (!j.is_array()) throw InputError(std::string(what) + ": " + where + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number())
            throw InputError(std::string(what) + ": " + where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// [x][a][x'] nested arrays into the flat kernel layout
std::vector<double> kernel_from(const json& j, int S, int A, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != S)
        throw InputError(std::string(what) + ": kernel must have one block per state");
    std::vector<double> flat(static_cast<std::size_t>(S) * A * S, 0.0);
    for (int x = 0; x < S; ++x) {
        const json& jx = j[x];
        if (!jx.is_array() || static_cast<int>(jx.size()) != A)
            throw InputError(std::string(what) + ": kernel[" + std::to_string(x) +
                             "] must have one row per action");
        for (int a = 0; a < A; ++a) {
            const auto row = num_array(jx[a], what, "kernel[" + std::to_string(x) + "][" +
                                                        std::to_string(a) + "]");
            if (static_cast<int>(row.size()) != S)
                throw InputError(std::string(what) + ": kernel row has wrong length");
            for (int xp = 0; xp < S; ++xp)
                flat[static_cast<std::size_t>(x * A + a) * S + xp] = row[xp];
        }
    }
    return flat;
}

json kernel_to(const std::vector<double>& flat, int S, int A) {
    json out = json::array();
    for (int x = 0; x < S; ++x) {
        json jx = json::array();
        for (int a = 0; a < A; ++a) {
            json row = json::array();
            for (int xp = 0; xp < S; ++xp)
                row.push_back(flat[static_cast<std::size_t>(x * A + a) * S + xp]);
            jx.push_back(std::move(row));
        }
        out.push_back(std::move(jx));
    }
    return out;
}

json reward_tables_to(const Mdp& m) {
    json out = json::array();
    for (int t = 0; t < m.horizon; ++t) {
        json jt = json::array();
        for (int x = 0; x < m.num_states; ++x) {
            json row = json::array();
            for (int a = 0; a < m.num_actions; ++a) row.push_back(m.reward(t, x, a));
            jt.push_back(std::move(row));
        }
        out.push_back(std::move(jt));
    }
    return out;
}

json mdp_to_json_value(const Mdp& m) {
    json j;
    j["num_states"] = m.num_states;
    j["num_actions"] = m.num_actions;
    j["horizon"] = m.horizon;
    j["transition"] = kernel_to(m.transition, m.num_states, m.num_actions);
    j["rewards"] = reward_tables_to(m);
    j["terminal_reward"] = m.terminal_reward;
    j["alarm_states"] = m.alarm_states;
    j["initial_state"] = m.initial_state;
    return j;
}

Mdp mdp_from_json_value(const json& j, const char* what) {
    Mdp m;
    m.num_states = int_field(j, "num_states", what);
    m.num_actions = int_field(j, "num_actions", what);
    m.horizon = int_field(j, "horizon", what);
    if (m.num_states <= 0 || m.num_actions <= 0 || m.horizon <= 0)
        throw InputError(std::string(what) + ": dimensions must be positive");
    m.transition = kernel_from(field(j, "transition", what), m.num_states, m.num_actions, what);

    const json& jr = field(j, "rewards", what);
    if (!jr.is_array() || static_cast<int>(jr.size()) != m.horizon)
        throw InputError(std::string(what) + ": rewards must have one table per step");
    m.rewards.resize(m.horizon);
    for (int t = 0; t < m.horizon; ++t) {
        const json& jt = jr[t];
        if (!jt.is_array() || static_cast<int>(jt.size()) != m.num_states)
            throw InputError(std::string(what) + ": rewards[" + std::to_string(t) +
                             "] must have one row per state");
        m.rewards[t].assign(static_cast<std::size_t>(m.num_states) * m.num_actions, 0.0);
        for (int x = 0; x < m.num_states; ++x) {
            const auto row = num_array(jt[x], what,
                                       "rewards[" + std::to_string(t) + "][" + std::to_string(x) + "]");
            if (static_cast<int>(row.size()) != m.num_actions)
                throw InputError(std::string(what) + ": reward row has wrong length");
            for (int a = 0; a < m.num_actions; ++a) m.rewards[t][x * m.num_actions + a] = row[a];
        }
    }

    m.terminal_reward = num_array(field(j, "terminal_reward", what), what, "terminal_reward");
    const json& ja = field(j, "alarm_states", what);
    if (!ja.is_array()) throw InputError(std::string(what) + ": alarm_states must be an array");
    for (const auto& v : ja) {
        if (!v.is_number_integer())
            throw InputError(std::string(what) + ": alarm_states must contain integers");
        m.alarm_states.push_back(v.get<int>());
    }
    m.initial_state = int_field(j, "initial_state", what);
    return m;
}

json index_map_to(const AugmentedMdp& aug) {
    json map = json::array();
    for (int i = 0; i < aug.num_aug_states(); ++i) {
        const auto [x, y] = aug.state_of(i);
        map.push_back(json::array({x, y}));
    }
    return map;
}

} // namespace

Mdp mdp_from_json(const std::string& text) {
    return mdp_from_json_value(parse(text, "model JSON"), "model JSON");
}

std::string mdp_to_json(const Mdp& mdp, int indent) {
    return mdp_to_json_value(mdp).dump(indent);
}

std::string augmented_to_json(const AugmentedMdp& aug, int indent) {
    json j = mdp_to_json_value(aug.mdp);
    j["mode"] = to_string(aug.mode);
    j["index_map"] = index_map_to(aug);
    return j.dump(indent);
}

std::string policy_to_json(const AugmentedMdp& aug, const MarkovPolicy& policy, int indent) {
    if (policy.num_states != aug.num_aug_states() || policy.horizon != aug.mdp.horizon)
        throw InputError("policy dimensions do not match the augmented MDP");
    json j;
    j["mode"] = to_string(aug.mode);
    j["horizon"] = policy.horizon;
    json tables = json::array();
    for (int t = 0; t < policy.horizon; ++t) {
        json jt = json::array();
        for (int x = 0; x < policy.num_states; ++x) {
            json row = json::array();
            for (int a = 0; a < policy.num_actions; ++a) row.push_back(policy.prob(t, x, a));
            jt.push_back(std::move(row));
        }
        tables.push_back(std::move(jt));
    }
    j["tables"] = std::move(tables);
    j["index_map"] = index_map_to(aug);
    return j.dump(indent);
}

PolicyFile policy_from_json(const std::string& text) {
    const char* what = "policy JSON";
    const json j = parse(text, what);
    PolicyFile file;

    const json& mode = field(j, "mode", what);
    if (mode == "binary") {
        file.mode = AugMode::Binary;
    } else if (mode == "counting") {
        file.mode = AugMode::Counting;
    } else {
        throw InputError("policy JSON: mode must be 'binary' or 'counting'");
    }

    const json& tables = field(j, "tables", what);
    const int T = int_field(j, "horizon", what);
    if (!tables.is_array() || static_cast<int>(tables.size()) != T || T <= 0)
        throw InputError("policy JSON: tables must have one entry per step");
    const json& first = tables[0];
    if (!first.is_array() || first.empty())
        throw InputError("policy JSON: tables[0] must be a nonempty array");
    const int S = static_cast<int>(first.size());
    const auto first_row = num_array(first[0], what, "tables[0][0]");
    const int A = static_cast<int>(first_row.size());
    if (A == 0) throw InputError("policy JSON: empty action row");

    file.policy = make_markov_policy(T, S, A);
    for (int t = 0; t < T; ++t) {
        const json& jt = tables[t];
        if (!jt.is_array() || static_cast<int>(jt.size()) != S)
            throw InputError("policy JSON: inconsistent state count in tables");
        for (int x = 0; x < S; ++x) {
            const auto row = num_array(jt[x], what,
                                       "tables[" + std::to_string(t) + "][" + std::to_string(x) + "]");
            if (static_cast<int>(row.size()) != A)
                throw InputError("policy JSON: inconsistent action count in tables");
            for (int a = 0; a < A; ++a) file.policy.prob(t, x, a) = row[a];
        }
    }

    const json& map = field(j, "index_map", what);
    if (!map.is_array() || static_cast<int>(map.size()) != S)
        throw InputError("policy JSON: index_map must list one [x, y] pair per augmented state");
    for (const auto& pair : map) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            throw InputError("policy JSON: index_map entries must be [x, y] pairs");
        file.index_map.push_back({pair[0].get<int>(), pair[1].get<int>()});
    }
    return file;
}

FinitePlant plant_from_json(const std::string& text) {
    return [](const json& j) {
        const char* what = "plant JSON";
        FinitePlant plant;
        plant.num_states = int_field(j, "plant_states", what);
        plant.num_actions = int_field(j, "actions", what);
        if (plant.num_states <= 0 || plant.num_actions <= 0)
            throw InputError("plant JSON: dimensions must be positive");
        plant.kernel = kernel_from(field(j, "kernel", what), plant.num_states, plant.num_actions, what);
        plant.outputs = num_array(field(j, "outputs", what), what, "outputs");
        plant.nominal_outputs = num_array(field(j, "nominal_outputs", what), what, "nominal_outputs");
        plant.initial_state = int_field(j, "initial_state", what);
        return plant;
    }(parse(text, "plant JSON"));
}

std::string plant_to_json(const FinitePlant& plant, int indent) {
    json j;
    j["plant_states"] = plant.num_states;
    j["actions"] = plant.num_actions;
    j["kernel"] = kernel_to(plant.kernel, plant.num_states, plant.num_actions);
    j["outputs"] = plant.outputs;
    j["nominal_outputs"] = plant.nominal_outputs;
    j["initial_state"] = plant.initial_state;
    return j.dump(indent);
}

namespace {

DetectorSpec detector_from_json_value(const json& j) {
    const char* what = "detector JSON";
    DetectorSpec det;
    const json& kind = field(j, "kind", what);
    if (kind == "chi2") {
        det.kind = DetectorSpec::Kind::Chi2;
        det.threshold = num_field(j, "threshold", what);
    } else if (kind == "cusum") {
        det.kind = DetectorSpec::Kind::Cusum;
        det.threshold = num_field(j, "threshold", what);
        det.bias = num_field(j, "bias", what);
        det.grid = num_array(field(j, "grid", what), what, "grid");
        det.max_level = num_field(j, "max_level", what);
    } else {
        throw InputError("detector JSON: kind must be 'chi2' or 'cusum'");
    }
    return det;
}

} // namespace

DetectorSpec detector_from_json(const std::string& text) {
    return detector_from_json_value(parse(text, "detector JSON"));
}

std::string detector_to_json(const DetectorSpec& detector, int indent) {
    json j;
    if (detector.kind == DetectorSpec::Kind::Chi2) {
        j["kind"] = "chi2";
        j["threshold"] = detector.threshold;
    } else {
        j["kind"] = "cusum";
        j["threshold"] = detector.threshold;
        j["bias"] = detector.bias;
        j["grid"] = detector.grid;
        j["max_level"] = detector.max_level;
    }
    return j.dump(indent);
}

ComposeSpec compose_spec_from_json(const std::string& text) {
    const char* what = "compose JSON";
    const json j = parse(text, what);
    ComposeSpec spec;
    spec.plant = plant_from_json(field(j, "plant", what).dump());
    spec.detector = detector_from_json_value(field(j, "detector", what));
    spec.horizon = int_field(j, "horizon", what);
    if (spec.horizon <= 0) throw InputError("compose JSON: horizon must be positive");

    const json& jr = field(j, "rewards", what);
    if (!jr.is_array() || static_cast<int>(jr.size()) != spec.horizon)
        throw InputError("compose JSON: rewards must have one table per step");
    const int Z = spec.plant.num_states;
    const int A = spec.plant.num_actions;
    spec.rewards.step.resize(spec.horizon);
    for (int t = 0; t < spec.horizon; ++t) {
        const json& jt = jr[t];
        if (!jt.is_array() || static_cast<int>(jt.size()) != Z)
            throw InputError("compose JSON: rewards table must have one row per plant state");
        spec.rewards.step[t].assign(static_cast<std::size_t>(Z) * A, 0.0);
        for (int z = 0; z < Z; ++z) {
            const auto row = num_array(jt[z], what, "rewards row");
            if (static_cast<int>(row.size()) != A)
                throw InputError("compose JSON: rewards row has wrong length");
            for (int a = 0; a < A; ++a) spec.rewards.step[t][z * A + a] = row[a];
        }
    }
    spec.rewards.terminal = num_array(field(j, "terminal_reward", what), what, "terminal_reward");
    return spec;
}

} // namespace ccmdp
