// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace casket {

/// Result of a birthday-collision simulation.
struct MonteCarloResult {
    uint64_t trials = 0;
    uint64_t collisions = 0;       ///< trials in which any bucket repeated
    double estimate = 0.0;         ///< collisions / trials
    double std_error = 0.0;        ///< sqrt(p(1-p)/trials), binomial
};

/// Draws q uniform samples from [0, N) per trial and counts the trials that
/// contain at least one repeat. Sampling is rejection from the deterministic
/// seeded bit generator, so results are reproducible and exactly uniform.
/// Requires 1 <= q <= N <= 2^40, trials >= 1, and q * trials <= 10^9; a
/// single sample (q = 1) cannot collide, so its estimate is exactly zero.
MonteCarloResult monte_carlo_birthday(uint64_t q, uint64_t N, uint64_t trials,
                                      std::string_view seed);

}  // namespace casket
