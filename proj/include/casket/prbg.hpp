// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "casket/bitstring.hpp"
#include "casket/sha256.hpp"

namespace casket {

/// Deterministic pseudorandom bit generator: counter-mode expansion of a
/// seed through SHA-256. Block i of the stream is sha256(seed || be64(i)).
/// The output is one contiguous bit stream; call granularity does not
/// affect the emitted sequence (two 35-bit reads equal one 70-bit read).
/// Equal seeds give equal streams.
///
/// Single-owner: one generator per access-node context, no sharing.
class Prbg {
  public:
    /// Any seed length is accepted, including empty (tests only; production
    /// callers should seed with at least 16 bytes of entropy).
    explicit Prbg(std::span<const uint8_t> seed);
    explicit Prbg(std::string_view seed);

    /// Seeds from the host entropy source (32 bytes).
    static Prbg from_entropy();

    /// Exactly n bits, n >= 1.
    BitString next_bits(size_t n);
    bool next_bit();
    uint8_t next_byte();
    uint64_t next_u64();

    /// Count of counter-mode blocks produced at the current stream
    /// position; no (counter, output) pair ever repeats within one stream.
    uint64_t blocks_generated() const { return counter_; }

    /// Total bits served since the start of the stream.
    uint64_t bits_consumed() const {
        return counter_ == 0 ? 0 : (counter_ - 1) * 256 + bit_pos_;
    }

    /// Repositions the stream: after seek(n), the next bit served is stream
    /// bit n. Counter mode makes this O(1); it is how a persisted stream
    /// position is resumed.
    void seek(uint64_t bit_offset);

  private:
    void refill();

    std::vector<uint8_t> seed_;
    uint64_t counter_ = 0;
    std::array<uint8_t, 32> block_{};
    size_t bit_pos_ = 256;  // bit offset into block_; 256 forces a refill
};

}  // namespace casket
