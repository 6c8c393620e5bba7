#include "commands.hpp"

#include "manifest.hpp"

#include "ccmdp/augmentation.hpp"
#include "ccmdp/builtin.hpp"
#include "ccmdp/errors.hpp"
#include "ccmdp/json_io.hpp"
#include "ccmdp/lp_builder.hpp"
#include "ccmdp/lp_solver.hpp"
#include "ccmdp/policy.hpp"
#include "ccmdp/simulator.hpp"
#include "ccmdp/verify.hpp"
#include "ccmdp/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

namespace ccmdp::cli {

namespace {

using Clock = std::chrono::steady_clock;

Mdp load_model(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin::by_name(spec);
    return mdp_from_json(read_file(spec));
}

int validate_or_report(const Mdp& mdp, const std::string& name) {
    const ValidationReport report = validate_mdp(mdp);
    if (report.ok) return kExitOk;
    std::cerr << name << " failed validation (" << report.violations.size() << " problem(s)):\n";
    for (const auto& v : report.violations)
        std::cerr << "  " << v.location << ": " << v.description << " (magnitude " << v.magnitude
                  << ")\n";
    return kExitValidation;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string solution_json(int problem, const std::vector<double>& deltas, const LpSolution& sol,
                          const AugmentedMdp& aug, const OccupationMeasure& rho) {
    nlohmann::json j;
    j["status"] = to_string(sol.status);
    j["problem"] = problem;
    j["deltas"] = deltas;
    j["objective"] = sol.objective;
    j["max_primal_residual"] = sol.max_primal_residual;
    j["mode"] = to_string(aug.mode);
    nlohmann::json occ;
    occ["horizon"] = rho.horizon;
    occ["num_states"] = rho.num_states;
    occ["num_actions"] = rho.num_actions;
    nlohmann::json tables = nlohmann::json::array();
    for (int t = 0; t < rho.horizon; ++t) {
        nlohmann::json jt = nlohmann::json::array();
        for (int x = 0; x < rho.num_states; ++x) {
            nlohmann::json row = nlohmann::json::array();
            for (int a = 0; a < rho.num_actions; ++a) row.push_back(rho.at(t, x, a));
            jt.push_back(std::move(row));
        }
        tables.push_back(std::move(jt));
    }
    occ["rho"] = std::move(tables);
    occ["terminal"] = rho.terminal;
    j["occupation"] = std::move(occ);
    return j.dump(1);
}

} // namespace

int run_solve(const SolveArgs& args) {
    const auto start = Clock::now();
    Mdp mdp;
    try {
        mdp = load_model(args.model);
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
    if (const int code = validate_or_report(mdp, args.model); code != kExitOk) return code;

    std::vector<double> deltas;
    if (args.problem == 1) {
        if (!args.deltas.empty()) {
            std::cerr << "problem 1 takes a single --delta, not --deltas\n";
            return kExitError;
        }
        deltas.push_back(args.delta);
    } else if (!args.deltas.empty()) {
        deltas = args.deltas;
    } else if (args.delta_set) {
        // convenience: a single delta for problem 2 bounds only the first event
        deltas.assign(mdp.horizon, 1.0);
        deltas[0] = args.delta;
    } else {
        std::cerr << "problem 2 needs --deltas with exactly T values\n";
        return kExitError;
    }

    SolverOptions options;
    if (args.tolerance > 0.0) {
        options.feasibility_tol = args.tolerance;
        options.optimality_tol = args.tolerance;
    }

    try {
        const AugmentedMdp aug =
            args.problem == 1 ? augment_binary(mdp) : augment_counting(mdp);
        const LpProblem lp = args.problem == 1 ? build_problem1_lp(aug, deltas[0])
                                               : build_problem2_lp(aug, deltas);
        const LpSolution sol = solve(lp, options);

        if (sol.status == SolveStatus::Infeasible) {
            std::cerr << "infeasible: no policy satisfies the stealth bounds (";
            for (std::size_t i = 0; i < deltas.size(); ++i)
                std::cerr << (i ? "," : "") << deltas[i];
            std::cerr << "); certificate gap " << sol.certificate_gap << "\n";
            return kExitInfeasible;
        }
        if (sol.status == SolveStatus::Unbounded) {
            std::cerr << "unbounded objective; the model is malformed\n";
            return kExitError;
        }

        std::filesystem::create_directories(args.out_dir);
        const OccupationMeasure rho = occupation_from_values(aug, lp, sol.values);
        const MarkovPolicy policy = extract_policy(aug, rho);

        RunManifest manifest;
        manifest.command = "solve";
        manifest.tool_version = kVersion;
        manifest.model = args.model;
        manifest.problem = args.problem;
        manifest.deltas = deltas;
        manifest.tolerance = args.tolerance;
        manifest.optimum = sol.objective;
        manifest.has_optimum = true;

        const std::string sol_path = join_path(args.out_dir, "solution.json");
        const std::string pol_path = join_path(args.out_dir, "policy.json");
        const std::string lp_path = join_path(args.out_dir, "problem.lp");
        write_file_atomic(sol_path, solution_json(args.problem, deltas, sol, aug, rho));
        write_file_atomic(pol_path, policy_to_json(aug, policy));
        write_file_atomic(lp_path, write_lp_text(lp));
        manifest.outputs = {sol_path, pol_path, lp_path};
        manifest.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        write_file_atomic(join_path(args.out_dir, "manifest.json"), manifest_to_json(manifest));

        std::printf("optimal value %.10g (residual %.2e, %ld iterations)\n", sol.objective,
                    sol.max_primal_residual, sol.iterations);
        std::printf("wrote %s, %s, %s\n", sol_path.c_str(), pol_path.c_str(), lp_path.c_str());
        return kExitOk;
    } catch (const ResourceLimitError& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}

int run_simulate(const SimulateArgs& args) {
    const auto start = Clock::now();
    Mdp mdp;
    PolicyFile policy_file;
    try {
        mdp = load_model(args.model);
        policy_file = policy_from_json(read_file(args.policy));
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
    if (const int code = validate_or_report(mdp, args.model); code != kExitOk) return code;

    try {
        const AugmentedMdp aug = policy_file.mode == AugMode::Binary ? augment_binary(mdp)
                                                                     : augment_counting(mdp);
        if (policy_file.policy.num_states != aug.num_aug_states() ||
            policy_file.policy.num_actions != mdp.num_actions ||
            policy_file.policy.horizon != mdp.horizon)
            throw InputError("policy does not match the model's augmented space");
        for (int i = 0; i < aug.num_aug_states(); ++i)
            if (policy_file.index_map[i] != std::pair<int, int>(aug.state_of(i)))
                throw InputError("policy index_map does not match the model's augmented layout");
        if (!policy_rows_stochastic(policy_file.policy))
            throw InputError("policy rows must be probability distributions");

        const HistoryPolicy lifted = lift_policy(policy_file.policy, aug);
        SimConfig cfg;
        cfg.num_trajectories = args.trajectories;
        cfg.seed = args.seed;
        cfg.record_paths = true;
        const SimStats stats = simulate(mdp, lifted, cfg);

        std::filesystem::create_directories(args.out_dir);
        const std::string pmf_path = join_path(args.out_dir, "alarm_pmf.csv");
        const std::string paths_path = join_path(args.out_dir, "paths.csv");
        const std::string means_path = join_path(args.out_dir, "conditional_means.csv");
        write_file_atomic(pmf_path, alarm_pmf_csv(stats));
        write_file_atomic(paths_path, paths_csv(stats));
        write_file_atomic(means_path, conditional_means_csv(stats));

        RunManifest manifest;
        manifest.command = "simulate";
        manifest.tool_version = kVersion;
        manifest.model = args.model;
        manifest.policy = args.policy;
        manifest.seed = args.seed;
        manifest.trajectories = args.trajectories;
        manifest.outputs = {pmf_path, paths_path, means_path};
        manifest.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        write_file_atomic(join_path(args.out_dir, "manifest.json"), manifest_to_json(manifest));

        std::printf("simulated %ld trajectories: mean reward %.6f, P(>=1 alarm) %.6f\n",
                    args.trajectories, stats.mean_reward, empirical_chance(stats, 1));
        std::printf("wrote %s, %s, %s\n", pmf_path.c_str(), paths_path.c_str(), means_path.c_str());
        return kExitOk;
    } catch (const ResourceLimitError& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}

int run_verify(const VerifyArgs& args) {
    SuiteReport report;
    if (args.suite == "appendix") {
        report = verify_appendix();
    } else if (args.suite == "theorem1") {
        report = verify_theorem1();
    } else if (args.suite == "table1") {
        report = verify_table1();
    } else {
        std::cerr << "unknown suite '" << args.suite << "' (expected appendix, theorem1, table1)\n";
        return kExitError;
    }
    std::cout << format_report(report);
    return report.all_bindings_pass() ? kExitOk : kExitError;
}

int run_compose(const ComposeArgs& args) {
    try {
        const ComposeSpec spec = compose_spec_from_json(read_file(args.spec));
        const ComposedMdp composed = compose(spec.plant, spec.detector, spec.rewards, spec.horizon);
        write_file_atomic(args.out, mdp_to_json(composed.mdp));
        std::printf("wrote %s (%d states, %d actions, horizon %d, %zu alarm states)\n",
                    args.out.c_str(), composed.mdp.num_states, composed.mdp.num_actions,
                    composed.mdp.horizon, composed.mdp.alarm_states.size());
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}

} // namespace ccmdp::cli
