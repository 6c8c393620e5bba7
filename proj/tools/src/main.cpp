#include "commands.hpp"

#include "ccmdp/version.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"ccmdp: worst-case stealthy-attack impact for finite MDPs with alarm regions"};
    app.set_version_flag("--version", ccmdp::kVersion);
    app.require_subcommand(1);

    ccmdp::cli::SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "Build and solve the occupation-measure LP, extract and save the policy");
    solve->add_option("--model", solve_args.model,
                      "model JSON path, builtin:appendix, or builtin:section5")
        ->required();
    solve->add_option("--problem", solve_args.problem, "1: single joint bound, 2: per-count bounds")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    CLI::Option* delta_opt =
        solve->add_option("--delta", solve_args.delta, "joint chance bound (problem 1)")
            ->check(CLI::Range(0.0, 1.0));
    solve->add_option("--deltas", solve_args.deltas,
                      "comma-separated bounds for >=1..>=T alarms (problem 2)")
        ->delimiter(',');
    solve->add_option("--tol", solve_args.tolerance, "solver feasibility/optimality tolerance");
    solve->add_option("--out", solve_args.out_dir, "output directory")->capture_default_str();

    ccmdp::cli::SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo rollout of a saved policy; writes plot-ready CSVs");
    simulate->add_option("--model", sim_args.model, "model JSON path or builtin name")->required();
    simulate->add_option("--policy", sim_args.policy, "policy JSON from solve")->required();
    simulate->add_option("--trajectories", sim_args.trajectories, "number of rollouts")
        ->capture_default_str();
    simulate->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--out", sim_args.out_dir, "output directory")->capture_default_str();

    ccmdp::cli::VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Run a built-in verification suite");
    verify->add_option("--suite", verify_args.suite, "appendix, theorem1, or table1")->required();

    ccmdp::cli::ComposeArgs compose_args;
    CLI::App* compose = app.add_subcommand(
        "compose", "Compose a finite plant with a detector into a standard model JSON");
    compose->add_option("--spec", compose_args.spec, "plant+detector+rewards JSON")->required();
    compose->add_option("--out", compose_args.out, "output model JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ccmdp::cli::kExitError;
    }

    if (solve->parsed()) {
        solve_args.delta_set = delta_opt->count() > 0;
        return ccmdp::cli::run_solve(solve_args);
    }
    if (simulate->parsed()) return ccmdp::cli::run_simulate(sim_args);
    if (verify->parsed()) return ccmdp::cli::run_verify(verify_args);
    if (compose->parsed()) return ccmdp::cli::run_compose(compose_args);
    return ccmdp::cli::kExitError;
}
