#include "manifest.hpp"

#include "ccmdp/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ccmdp::cli {

std::string manifest_to_json(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["tool_version"] = m.tool_version;
    j["inputs"]["model"] = m.model;
    if (!m.policy.empty()) j["inputs"]["policy"] = m.policy;
    nlohmann::json cfg;
    if (m.problem != 0) cfg["problem"] = m.problem;
    if (!m.deltas.empty()) cfg["deltas"] = m.deltas;
    cfg["seed"] = m.seed;
    if (m.trajectories > 0) cfg["trajectories"] = m.trajectories;
    if (m.tolerance > 0.0) cfg["tolerance"] = m.tolerance;
    j["config"] = std::move(cfg);
    j["outputs"] = m.outputs;
    if (m.has_optimum) j["optimum"] = m.optimum;
    j["wall_seconds"] = m.wall_seconds;
    return j.dump(1);
}

void write_file_atomic(const std::string& path, const std::string& text) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
        out << text;
        if (!out) throw InputError("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace ccmdp::cli
