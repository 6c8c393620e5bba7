#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccmdp::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;      // parse errors, failed verify suites
inline constexpr int kExitInfeasible = 2; // the stealth constraints admit no policy
inline constexpr int kExitValidation = 3; // model/policy validation failure
inline constexpr int kExitResource = 4;   // enumeration or iteration limits

struct SolveArgs {
    std::string model; // path or builtin:appendix / builtin:section5
    int problem = 1;
    double delta = 0.5;
    bool delta_set = false;
    std::vector<double> deltas;
    std::string out_dir = ".";
    double tolerance = 0.0; // 0: solver defaults
};

struct SimulateArgs {
    std::string model;
    std::string policy;
    long trajectories = 100000;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

struct VerifyArgs {
    std::string suite; // appendix | theorem1 | table1
};

struct ComposeArgs {
    std::string spec; // one-file plant+detector+rewards JSON
    std::string out;  // model JSON path
};

int run_solve(const SolveArgs& args);
int run_simulate(const SimulateArgs& args);
int run_verify(const VerifyArgs& args);
int run_compose(const ComposeArgs& args);

} // namespace ccmdp::cli
