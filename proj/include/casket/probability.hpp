// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace casket {

/// A probability carried as its base-2 logarithm so values like 2^-248 keep
/// full precision end to end. log2_value() is always <= 0; an impossible
/// event is -infinity.
class Probability {
  public:
    Probability() : log2_(-kInf) {}

    static Probability from_log2(double log2_value);
    /// linear in [0, 1].
    static Probability from_linear(double linear);
    static Probability zero() { return Probability(); }
    static Probability one() { return from_log2(0.0); }

    double log2_value() const { return log2_; }
    double linear() const;

    /// Scientific decimal with six significant figures, e.g. "1.469366e-27".
    std::string to_decimal() const;
    /// Power-of-two form, e.g. "2^-89.1369".
    std::string to_pow2() const;

    bool operator<(const Probability& other) const { return log2_ < other.log2_; }
    bool operator<=(const Probability& other) const { return log2_ <= other.log2_; }

  private:
    explicit Probability(double log2_value) : log2_(log2_value) {}
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    double log2_;
};

// ---------------------------------------------------------------------------
// Birthday-bound calculators. q balls into N buckets throughout.

/// Upper bound min(1, q(q-1)/(2N)). Requires N > q > 1.
Probability collision_bound(double q, double N);

/// Exact collision probability 1 - prod_{i=0}^{q-1} (1 - i/N), evaluated as
/// a compensated sum of log1p terms. Requires 1 <= q <= N and q <= 10^7
/// (product budget).
Probability exact_birthday(uint64_t q, double N);

/// Probability that at least one of q samples hits one designated bucket:
/// 1 - ((N-1)/N)^q. Requires q >= 1, N >= 1.
Probability same_birthday_as_you(double q, double N);

// ---------------------------------------------------------------------------
// Naming-scheme instantiations.

/// M-scheme collision bound for a given object count: q into 2^128.
/// Requires 1 < files < 2^128.
Probability m_collision(double files);

/// Upper bound on the number of files sharing one (timestamp, counter)
/// pair: A + ceil(A*S / 2^10). Requires S >= A >= 1 (formula validity).
uint64_t gm_set_size(uint64_t access_nodes, uint64_t files_per_second_per_node);

/// GM collision probability per millisecond of operation: (A*S)^2 / 2^219.
/// Requires S >= A >= 1.
Probability gm_collision_per_ms(double access_nodes, double files_per_second_per_node);

/// GM collision probability over a window of Z milliseconds, clamped to 1.
Probability gm_collision_over(double access_nodes, double files_per_second_per_node,
                              double window_ms);

/// M++ collision bound: q into 2^(128+120) = 2^248. Requires
/// 1 < files < 2^248.
Probability mpp_collision(double files);

// ---------------------------------------------------------------------------
// Attack-cost arithmetic (work in log2 operations).

/// Generic second-preimage cost against an n-bit iterated hash for a
/// 2^k-block message: log2(k * 2^(n/2+1) + 2^(n-k+1)). Requires n > k >= 1.
double second_preimage_cost_log2(unsigned hash_bits, unsigned block_exponent);

/// The dominant term of the same cost: n - k + 1.
double second_preimage_dominant_log2(unsigned hash_bits, unsigned block_exponent);

/// Meet-in-the-middle second-preimage cost when the compression function
/// admits a 2^s-operation second preimage: 1 + (n + s) / 2.
double mitm_second_preimage_cost_log2(unsigned hash_bits, unsigned weakness_exponent);

/// Block-count exponent for the largest storable file: ceil(log2(bytes *
/// 8 / 512)). With the 100 MB ceiling this is 21.
unsigned block_exponent_for_bytes(uint64_t bytes);

}  // namespace casket
