#pragma once

#include "ccmdp/lp_solver.hpp"
#include "ccmdp/mdp.hpp"
#include "ccmdp/occupation.hpp"
#include "ccmdp/policy.hpp"

#include <span>

namespace ccmdp {

/// Unconstrained optimum by backward induction (dynamic programming).
double backward_induction_value(const Mdp& mdp);

/// Exact occupation measure of a Markov policy by forward recursion.
OccupationMeasure forward_propagate(const Mdp& mdp, const MarkovPolicy& policy);

struct PathLpOptions {
    long max_variables = 1'000'000;
    SolverOptions solver;
};

/**
 * Exact optimum over all history-dependent randomized policies, via an LP
 * whose variables are joint probabilities of kernel-positive path prefixes
 * (x_0..x_t, a_0..a_t); kernel probabilities enter as fixed multipliers and
 * the policy conditionals stay free. deltas[i-1] bounds P(at least i alarms);
 * pass a single delta for the single-constraint problem. Throws
 * ResourceLimitError past max_variables and InputError when infeasible.
 */
double solve_path_lp(const Mdp& mdp, std::span<const double> deltas,
                     const PathLpOptions& options = {});

/// Same, returning the LP status alongside the value.
struct PathLpResult {
    SolveStatus status;
    double value;
};
PathLpResult solve_path_lp_status(const Mdp& mdp, std::span<const double> deltas,
                                  const PathLpOptions& options = {});

struct GridSearchOptions {
    long max_candidates = 2'000'000;
    long max_paths = 2'000'000;
    long max_work = 200'000'000; // candidates x paths
    double feasibility_slack = 1e-12;
};

/**
 * Best value over grid-sampled Markov policies on the original MDP subject to
 * P(any alarm) <= delta, each candidate evaluated exactly by path
 * enumeration. Only reachable (t, x) rows with non-equivalent actions are
 * gridded; equivalent-action rows are fixed to uniform. Returns -infinity if
 * no grid point is feasible; a lower bound on the Markov optimum within grid
 * granularity.
 */
double markov_grid_search(const Mdp& mdp, double delta, int grid_resolution,
                          const GridSearchOptions& options = {});

} // namespace ccmdp
