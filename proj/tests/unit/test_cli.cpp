#include "commands.hpp"
#include "manifest.hpp"

#include "ccmdp/builtin.hpp"
#include "ccmdp/json_io.hpp"
#include "ccmdp/mdp.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace ccmdp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("solve writes solution, policy, lp export, and manifest") {
    TempDir dir("ccmdp_cli_solve");
    cli::SolveArgs args;
    args.model = "builtin:appendix";
    args.problem = 1;
    args.delta = 0.5;
    args.delta_set = true;
    args.out_dir = dir.file("run");
    REQUIRE(cli::run_solve(args) == cli::kExitOk);

    const auto solution = nlohmann::json::parse(cli::read_file(dir.file("run/solution.json")));
    CHECK(solution["status"] == "optimal");
    CHECK(std::fabs(solution["objective"].get<double>() - 4.0) < 1e-6);
    const auto manifest = nlohmann::json::parse(cli::read_file(dir.file("run/manifest.json")));
    CHECK(manifest["command"] == "solve");
    CHECK(std::fabs(manifest["optimum"].get<double>() - 4.0) < 1e-6);
    CHECK(fs::exists(dir.file("run/policy.json")));
    CHECK(fs::exists(dir.file("run/problem.lp")));

    // reruns are byte-identical on the data artifacts
    const std::string sol1 = cli::read_file(dir.file("run/solution.json"));
    const std::string pol1 = cli::read_file(dir.file("run/policy.json"));
    REQUIRE(cli::run_solve(args) == cli::kExitOk);
    CHECK(cli::read_file(dir.file("run/solution.json")) == sol1);
    CHECK(cli::read_file(dir.file("run/policy.json")) == pol1);
}

TEST_CASE("solve exit codes distinguish failure classes") {
    TempDir dir("ccmdp_cli_codes");

    SUBCASE("infeasible bounds") {
        cli::SolveArgs args;
        args.model = "builtin:appendix";
        args.problem = 1;
        args.delta = 0.0; // the pre-chain alarms with probability 1/4
        args.delta_set = true;
        args.out_dir = dir.file("run");
        CHECK(cli::run_solve(args) == cli::kExitInfeasible);
    }
    SUBCASE("validation failure") {
        Mdp bad = builtin::appendix_mdp();
        bad.p(0, 0, 1) = 0.1; // break a row sum
        std::ofstream(dir.file("bad.json")) << mdp_to_json(bad);
        cli::SolveArgs args;
        args.model = dir.file("bad.json");
        args.out_dir = dir.file("run");
        CHECK(cli::run_solve(args) == cli::kExitValidation);
    }
    SUBCASE("malformed JSON") {
        std::ofstream(dir.file("broken.json")) << "{ not json";
        cli::SolveArgs args;
        args.model = dir.file("broken.json");
        args.out_dir = dir.file("run");
        CHECK(cli::run_solve(args) == cli::kExitError);
    }
    SUBCASE("wrong deltas length for problem 2") {
        cli::SolveArgs args;
        args.model = "builtin:appendix";
        args.problem = 2;
        args.deltas = {0.5, 0.25}; // horizon is 3
        args.out_dir = dir.file("run");
        CHECK(cli::run_solve(args) == cli::kExitValidation);
    }
}

TEST_CASE("simulate consumes solve output and is seed-reproducible") {
    TempDir dir("ccmdp_cli_sim");
    cli::SolveArgs solve_args;
    solve_args.model = "builtin:appendix";
    solve_args.problem = 1;
    solve_args.delta = 0.5;
    solve_args.delta_set = true;
    solve_args.out_dir = dir.file("run");
    REQUIRE(cli::run_solve(solve_args) == cli::kExitOk);

    cli::SimulateArgs sim_args;
    sim_args.model = "builtin:appendix";
    sim_args.policy = dir.file("run/policy.json");
    sim_args.trajectories = 5000;
    sim_args.seed = 7;
    sim_args.out_dir = dir.file("sim");
    REQUIRE(cli::run_simulate(sim_args) == cli::kExitOk);
    const std::string pmf1 = cli::read_file(dir.file("sim/alarm_pmf.csv"));
    const std::string paths1 = cli::read_file(dir.file("sim/paths.csv"));
    const std::string means1 = cli::read_file(dir.file("sim/conditional_means.csv"));

    REQUIRE(cli::run_simulate(sim_args) == cli::kExitOk);
    CHECK(cli::read_file(dir.file("sim/alarm_pmf.csv")) == pmf1);
    CHECK(cli::read_file(dir.file("sim/paths.csv")) == paths1);
    CHECK(cli::read_file(dir.file("sim/conditional_means.csv")) == means1);

    SUBCASE("a policy for a different model is rejected") {
        cli::SimulateArgs bad = sim_args;
        bad.model = "builtin:section5";
        CHECK(cli::run_simulate(bad) == cli::kExitValidation);
    }
}

TEST_CASE("verify suites run from the CLI") {
    CHECK(cli::run_verify({"appendix"}) == cli::kExitOk);
    CHECK(cli::run_verify({"nonsense"}) == cli::kExitError);
}

TEST_CASE("compose emits a standard model") {
    TempDir dir("ccmdp_cli_compose");
    const std::string spec = R"({
      "plant": {
        "plant_states": 2, "actions": 1,
        "kernel": [[[0.5, 0.5]], [[0.25, 0.75]]],
        "outputs": [0.0, 2.0],
        "nominal_outputs": [0.0, 0.0, 0.0],
        "initial_state": 0
      },
      "detector": {"kind": "chi2", "threshold": 1.0},
      "horizon": 2,
      "rewards": [[[1.0], [2.0]], [[1.0], [2.0]]],
      "terminal_reward": [0.0, 1.0]
    })";
    std::ofstream(dir.file("spec.json")) << spec;
    cli::ComposeArgs args;
    args.spec = dir.file("spec.json");
    args.out = dir.file("model.json");
    REQUIRE(cli::run_compose(args) == cli::kExitOk);
    const Mdp composed = mdp_from_json(cli::read_file(dir.file("model.json")));
    CHECK(validate_mdp(composed).ok);
    CHECK(composed.num_states == 2);
    CHECK(composed.alarm_states == std::vector<int>{1}); // output 2, residual^2 = 4 > 1
}
