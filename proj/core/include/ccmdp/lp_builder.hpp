#pragma once

#include "ccmdp/augmentation.hpp"
#include "ccmdp/lp_problem.hpp"
#include "ccmdp/occupation.hpp"

#include <span>

namespace ccmdp {

/**
 * LP over occupation measures for the single joint chance constraint: the
 * terminal mass on flag-raised states is bounded by delta. Requires a binary
 * augmentation.
 *
 * Equality rows, in order: one initial-mass row, |Xhat| flow rows for each
 * t = 1..T-1, then |Xhat| terminal-definition rows. All per-step variables at
 * t = 0 other than the initial augmented state are fixed to zero via bounds.
 */
LpProblem build_problem1_lp(const AugmentedMdp& aug, double delta);

/**
 * LP for the multi-alarm constraint family: T inequality rows, row i bounding
 * the terminal mass on counter values >= i by deltas[i-1]. Requires a
 * counting augmentation and exactly T deltas.
 */
LpProblem build_problem2_lp(const AugmentedMdp& aug, std::span<const double> deltas);

/// Exact value of the linear objective sum_t r_t.rho_t + r_T.rho_T.
double objective_value(const AugmentedMdp& aug, const OccupationMeasure& rho);

/// Reshapes an LP solution vector into an occupation measure via the variable map.
OccupationMeasure occupation_from_values(const AugmentedMdp& aug, const LpProblem& problem,
                                         std::span<const double> values);

/// Flattens an occupation measure into an LP-ordered vector (for checks/exports).
std::vector<double> values_from_occupation(const LpProblem& problem, const OccupationMeasure& rho);

/// Per-step mass error: max_t |sum_{x,a} rho_t(x,a) - 1| including the terminal step.
double max_mass_error(const OccupationMeasure& rho);

} // namespace ccmdp
