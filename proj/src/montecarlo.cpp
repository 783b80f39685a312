// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "casket/prbg.hpp"

namespace casket {

namespace {

/// Uniform draw from [0, n) by rejection on the smallest covering bit width.
uint64_t draw_below(Prbg& gen, uint64_t n, unsigned bits) {
    for (;;) {
        uint64_t v = gen.next_bits(bits).get_uint(0, bits);
        if (v < n) return v;
    }
}

}  // namespace

MonteCarloResult monte_carlo_birthday(uint64_t q, uint64_t N, uint64_t trials,
                                      std::string_view seed) {
    if (q < 1 || q > N) throw std::domain_error("monte_carlo_birthday needs 1 <= q <= N");
    if (N > (uint64_t{1} << 40)) throw std::domain_error("monte_carlo_birthday needs N <= 2^40");
    if (trials < 1) throw std::domain_error("monte_carlo_birthday needs trials >= 1");
    if (q > 1'000'000'000 / trials)
        throw std::domain_error("monte_carlo_birthday sample budget is 10^9 draws");

    Prbg gen(seed);
    unsigned bits = std::bit_width(N - 1);
    if (bits == 0) bits = 1;  // N == 1 is excluded above, but keep the draw sane

    MonteCarloResult result;
    result.trials = trials;
    std::vector<uint64_t> samples;
    samples.reserve(q);
    for (uint64_t t = 0; t < trials; ++t) {
        samples.clear();
        for (uint64_t i = 0; i < q; ++i) samples.push_back(draw_below(gen, N, bits));
        std::sort(samples.begin(), samples.end());
        if (std::adjacent_find(samples.begin(), samples.end()) != samples.end())
            ++result.collisions;
    }
    result.estimate = static_cast<double>(result.collisions) / static_cast<double>(trials);
    result.std_error =
        std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
    return result;
}

}  // namespace casket
