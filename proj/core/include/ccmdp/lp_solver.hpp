#pragma once

#include "ccmdp/lp_problem.hpp"

#include <vector>

namespace ccmdp {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

const char* to_string(SolveStatus status);

struct SolverOptions {
    double feasibility_tol = 1e-9; // row and bound feasibility
    double optimality_tol = 1e-9;  // reduced-cost tolerance, relative to max |c|
    long max_iterations = 2'000'000;
    int refactor_interval = 3000; // rebuild the basis inverse every this many pivots
};

struct LpSolution {
    SolveStatus status = SolveStatus::Optimal;
    std::vector<double> values; // over all problem columns
    double objective = 0.0;
    double max_primal_residual = 0.0;
    long iterations = 0;

    // Infeasible: row multipliers y (equality rows first, then inequality
    // rows) whose combination no point in the box can satisfy; gap is the
    // shortfall. Unbounded: an improving ray over the problem columns.
    std::vector<double> certificate;
    double certificate_gap = 0.0;
};

/**
 * Deterministic bounded-variable primal simplex (two phases, Dantzig pricing
 * with Bland's rule engaged after degenerate stalls; ties broken by lowest
 * index). Identical inputs produce identical solution vectors. Structurally
 * forced variables are removed by a bound-propagation presolve first.
 *
 * Throws InputError on NaN/Inf coefficients and ResourceLimitError if the
 * iteration cap is hit.
 */
LpSolution solve(const LpProblem& problem, const SolverOptions& options = {});

} // namespace ccmdp
