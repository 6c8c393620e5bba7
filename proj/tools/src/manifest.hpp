#pragma once

#include <string>
#include <vector>

namespace ccmdp::cli {

/**
 * Record of one successful command: what ran, with which inputs and
 * configuration, what it wrote, and the headline numbers. Serialized as JSON
 * and written atomically (temp file + rename) after the outputs.
 */
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::string model;  // path or builtin:name
    std::string policy; // simulate only
    int problem = 0;    // solve only
    std::vector<double> deltas;
    std::uint64_t seed = 0;
    long trajectories = 0;
    double tolerance = 0.0;
    std::vector<std::string> outputs;
    double optimum = 0.0;
    bool has_optimum = false;
    double wall_seconds = 0.0;
};

std::string manifest_to_json(const RunManifest& manifest);

/// Writes text to path via a temporary file in the same directory + rename.
void write_file_atomic(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

} // namespace ccmdp::cli
