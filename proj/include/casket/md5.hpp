// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "casket/bitstring.hpp"

namespace casket {

struct Digest128 {
    std::array<uint8_t, 16> bytes{};

    std::string to_hex() const;
    BitString to_bits() const { return BitString::from_bytes(bytes); }
    static Digest128 from_hex(std::string_view hex);

    bool operator==(const Digest128&) const = default;
};

/// The four 32-bit MD5 chaining variables. The initial state serializes to
/// the byte sequence 01 23 45 67 89 ab cd ef fe dc ba 98 76 54 32 10
/// (RFC 1321 little-endian word order).
struct Md5State {
    uint32_t a = 0x67452301;
    uint32_t b = 0xefcdab89;
    uint32_t c = 0x98badcfe;
    uint32_t d = 0x10325476;

    std::array<uint8_t, 16> serialize() const;
    static Md5State deserialize(std::span<const uint8_t, 16> bytes);

    bool operator==(const Md5State&) const = default;
};

/// One 512-bit message block, viewed by the compressor as sixteen
/// little-endian 32-bit words.
using MessageBlock512 = std::array<uint8_t, 64>;

/// The round-dependent boolean function: round 1 selects y or z by x,
/// round 2 selects x or y by z, round 3 is parity, round 4 is y XOR (x OR ~z).
/// round_index must be 1..4.
uint32_t md5_phi(unsigned round_index, uint32_t x, uint32_t y, uint32_t z);

/// Full 64-step compression of one block, feed-forward included, so the
/// result is directly the next chaining value.
Md5State md5_compress(const Md5State& state, const MessageBlock512& block);

/// Streaming MD5 context. Single-owner; distinct contexts are independent.
class Md5 {
  public:
    Md5() = default;

    void update(std::span<const uint8_t> data);
    void update(std::string_view data);
    Digest128 finish();
    void reset();

  private:
    Md5State state_;
    MessageBlock512 buf_{};
    size_t buf_len_ = 0;
    uint64_t total_bytes_ = 0;
};

Digest128 md5(std::span<const uint8_t> data);
Digest128 md5(std::string_view data);

}  // namespace casket
