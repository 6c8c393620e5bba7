#pragma once

#include "ccmdp/mdp.hpp"

#include <cstdint>
#include <vector>

namespace ccmdp {

/**
 * Seeded family of tiny instances (|X| <= 4, |A| <= 3, T <= 4) used by the
 * equivalence suites. Kernels mix point masses and two-point branches with
 * probabilities on a coarse rational grid, so path enumeration stays exact
 * and history-dependent gaps appear regularly. delta and the non-increasing
 * deltas sequence come quantized to eighths.
 */
struct RandomInstance {
    Mdp mdp;
    double delta = 1.0;                 // single joint chance bound
    std::vector<double> deltas;         // non-increasing, length T
};

RandomInstance random_tiny_instance(std::uint64_t seed);

} // namespace ccmdp
