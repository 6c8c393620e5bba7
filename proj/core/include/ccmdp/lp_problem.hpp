#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccmdp {

struct SparseEntry {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

/**
 * Column layout used by the occupation-measure LPs: t-major, then state,
 * then action, with the terminal block rho_T(x) after all per-step blocks.
 */
struct VariableMap {
    int horizon = 0;
    int num_states = 0;
    int num_actions = 0;

    int col(int t, int x, int a) const { return (t * num_states + x) * num_actions + a; }
    int col_terminal(int x) const { return horizon * num_states * num_actions + x; }
    int num_vars() const { return horizon * num_states * num_actions + num_states; }
};

/**
 * max objective . x  subject to  Aeq x = eq_rhs, Aineq x <= ineq_rhs,
 * lower <= x <= upper. Matrices are sparse triplets; bounds are dense.
 */
struct LpProblem {
    int num_vars = 0;
    std::vector<double> objective; // dense, length num_vars
    std::vector<SparseEntry> equalities;
    std::vector<double> eq_rhs;
    std::vector<SparseEntry> inequalities;
    std::vector<double> ineq_rhs;
    std::vector<double> lower;
    std::vector<double> upper;
    VariableMap variable_map; // meaningful only for builder-produced problems
};

/// Residuals of a candidate point against an LP's rows and bounds.
struct LpPointCheck {
    double max_eq_residual = 0.0;
    double max_ineq_violation = 0.0; // positive part of Aineq x - rhs
    double max_bound_violation = 0.0;
};

LpPointCheck check_lp_point(const LpProblem& problem, const std::vector<double>& values);

/// Exact objective . x.
double lp_objective(const LpProblem& problem, const std::vector<double>& values);

/**
 * Plain-text sparse interchange format: a header with dimensions followed by
 * one line per nonzero in named sections (objective, equalities, eq_rhs,
 * inequalities, ineq_rhs, bounds). Bounds default to [0,1]; the bounds
 * section lists overrides, with "inf"/"-inf" accepted.
 */
std::string write_lp_text(const LpProblem& problem);
LpProblem parse_lp_text(const std::string& text);
LpProblem parse_lp_text(std::istream& in);

} // namespace ccmdp
