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

struct Digest256 {
    std::array<uint8_t, 32> bytes{};

    std::string to_hex() const;
    BitString to_bits() const { return BitString::from_bytes(bytes); }
    static Digest256 from_hex(std::string_view hex);

    bool operator==(const Digest256&) const = default;
};

/// Streaming SHA-256 (FIPS 180-2). Single-owner; distinct contexts are
/// independent.
class Sha256 {
  public:
    Sha256() { reset(); }

    void update(std::span<const uint8_t> data);
    void update(std::string_view data);
    Digest256 finish();
    void reset();

  private:
    void compress(const uint8_t block[64]);

    std::array<uint32_t, 8> h_;
    std::array<uint8_t, 64> buf_;
    size_t buf_len_ = 0;
    uint64_t total_bytes_ = 0;
};

Digest256 sha256(std::span<const uint8_t> data);
Digest256 sha256(std::string_view data);

}  // namespace casket
