// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/probability.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace casket {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(what) + " must be finite");
    return v;
}

}  // namespace

Probability Probability::from_log2(double log2_value) {
    if (std::isnan(log2_value) || log2_value > 0.0)
        throw std::domain_error("log2 probability must be <= 0");
    return Probability(log2_value);
}

Probability Probability::from_linear(double linear) {
    if (std::isnan(linear) || linear < 0.0 || linear > 1.0)
        throw std::domain_error("linear probability must be in [0, 1]");
    if (linear == 0.0) return zero();
    return Probability(std::log2(linear));
}

double Probability::linear() const {
    return std::isinf(log2_) ? 0.0 : std::exp2(log2_);
}

std::string Probability::to_decimal() const {
    if (std::isinf(log2_)) return "0";
    // Convert the exponent in base 10 without leaving the log domain, so
    // values far below DBL_MIN still render.
    static const double kLog10Of2 = std::log10(2.0);
    double log10_value = log2_ * kLog10Of2;
    double exponent = std::floor(log10_value);
    double mantissa = std::pow(10.0, log10_value - exponent);
    // Guard the rounding seam: 9.9999995 prints as 1.000000e+(k+1).
    if (mantissa >= 9.9999995) {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6fe%+03d", mantissa, static_cast<int>(exponent));
    return buf;
}

std::string Probability::to_pow2() const {
    if (std::isinf(log2_)) return "2^-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "2^%.6g", log2_);
    return buf;
}

// ---------------------------------------------------------------------------

Probability collision_bound(double q, double N) {
    require_finite(q, "q");
    require_finite(N, "N");
    if (q <= 1.0 || N <= q) throw std::domain_error("collision_bound needs N > q > 1");
    double log2_value = std::log2(q) + std::log2(q - 1.0) - 1.0 - std::log2(N);
    return Probability::from_log2(std::min(0.0, log2_value));
}

Probability exact_birthday(uint64_t q, double N) {
    require_finite(N, "N");
    if (q < 1 || static_cast<double>(q) > N)
        throw std::domain_error("exact_birthday needs 1 <= q <= N");
    if (q > 10'000'000) throw std::domain_error("exact_birthday q exceeds product budget");
    if (q == 1) return Probability::zero();
    // ln prod (1 - i/N) as a compensated sum; the terms are tiny and nearly
    // equal, which is exactly where naive accumulation loses digits.
    double sum = 0.0;
    double carry = 0.0;
    for (uint64_t i = 1; i < q; ++i) {
        double term = std::log1p(-static_cast<double>(i) / N) - carry;
        double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    double linear_ln = sum;                 // ln P(no collision), <= 0
    double p = -std::expm1(linear_ln);      // 1 - e^sum, accurate near 0
    if (p <= 0.0) return Probability::zero();
    if (p >= 1.0) return Probability::one();
    return Probability::from_log2(std::log2(p));
}

Probability same_birthday_as_you(double q, double N) {
    require_finite(q, "q");
    require_finite(N, "N");
    if (q < 1.0 || N < 1.0) throw std::domain_error("same_birthday_as_you needs q, N >= 1");
    double p = -std::expm1(q * std::log1p(-1.0 / N));
    if (p >= 1.0) return Probability::one();
    if (p <= 0.0) return Probability::zero();
    return Probability::from_log2(std::log2(p));
}

// ---------------------------------------------------------------------------

Probability m_collision(double files) {
    require_finite(files, "files");
    if (files <= 1.0 || files >= 0x1p128) throw std::domain_error("m_collision needs 1 < files < 2^128");
    return collision_bound(files, 0x1p128);
}

uint64_t gm_set_size(uint64_t access_nodes, uint64_t files_per_second_per_node) {
    if (access_nodes < 1 || files_per_second_per_node < access_nodes)
        throw std::domain_error("gm_set_size needs S >= A >= 1");
    unsigned __int128 product =
        static_cast<unsigned __int128>(access_nodes) * files_per_second_per_node;
    unsigned __int128 ceil_div = (product + 1023) / 1024;
    unsigned __int128 total = access_nodes + ceil_div;
    if (total > std::numeric_limits<uint64_t>::max())
        throw std::domain_error("gm_set_size overflows 64 bits");
    return static_cast<uint64_t>(total);
}

Probability gm_collision_per_ms(double access_nodes, double files_per_second_per_node) {
    require_finite(access_nodes, "A");
    require_finite(files_per_second_per_node, "S");
    if (access_nodes < 1.0 || files_per_second_per_node < access_nodes)
        throw std::domain_error("gm_collision_per_ms needs S >= A >= 1");
    double log2_value =
        2.0 * (std::log2(access_nodes) + std::log2(files_per_second_per_node)) - 219.0;
    return Probability::from_log2(std::min(0.0, log2_value));
}

Probability gm_collision_over(double access_nodes, double files_per_second_per_node,
                              double window_ms) {
    require_finite(window_ms, "window_ms");
    if (window_ms < 1.0) throw std::domain_error("gm_collision_over needs window_ms >= 1");
    Probability per_ms = gm_collision_per_ms(access_nodes, files_per_second_per_node);
    double log2_value = per_ms.log2_value() + std::log2(window_ms);
    return Probability::from_log2(std::min(0.0, log2_value));
}

Probability mpp_collision(double files) {
    require_finite(files, "files");
    if (files <= 1.0 || files >= 0x1p248)
        throw std::domain_error("mpp_collision needs 1 < files < 2^248");
    return collision_bound(files, 0x1p248);
}

// ---------------------------------------------------------------------------

double second_preimage_cost_log2(unsigned hash_bits, unsigned block_exponent) {
    if (block_exponent < 1 || hash_bits <= block_exponent)
        throw std::domain_error("second_preimage_cost_log2 needs n > k >= 1");
    double n = hash_bits;
    double k = block_exponent;
    double walk = std::log2(k) + n / 2.0 + 1.0;  // k * 2^(n/2+1)
    double land = n - k + 1.0;                   // 2^(n-k+1)
    double hi = std::max(walk, land);
    double lo = std::min(walk, land);
    return hi + std::log1p(std::exp2(lo - hi)) / kLn2;
}

double second_preimage_dominant_log2(unsigned hash_bits, unsigned block_exponent) {
    if (block_exponent < 1 || hash_bits <= block_exponent)
        throw std::domain_error("second_preimage_dominant_log2 needs n > k >= 1");
    return static_cast<double>(hash_bits) - block_exponent + 1.0;
}

double mitm_second_preimage_cost_log2(unsigned hash_bits, unsigned weakness_exponent) {
    if (hash_bits < 1 || weakness_exponent >= hash_bits)
        throw std::domain_error("mitm cost needs n > s >= 0");
    return 1.0 + (static_cast<double>(hash_bits) + weakness_exponent) / 2.0;
}

unsigned block_exponent_for_bytes(uint64_t bytes) {
    if (bytes == 0) throw std::domain_error("block_exponent_for_bytes needs bytes >= 1");
    uint64_t blocks = (bytes + 63) / 64;  // 512-bit blocks
    if (blocks <= 1) return 1;            // k >= 1 for the cost formulas
    return static_cast<unsigned>(std::bit_width(blocks - 1));
}

}  // namespace casket
