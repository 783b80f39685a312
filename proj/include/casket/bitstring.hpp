// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace casket {

/// A bit string of arbitrary length. Bits are indexed from 0 and packed
/// MSB-first into bytes, so bit 0 is the high bit of byte 0. Fixed-width
/// integer fields are appended and extracted big-endian.
class BitString {
  public:
    BitString() = default;
    explicit BitString(size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

    static BitString from_bytes(std::span<const uint8_t> bytes);
    // Takes the leading nbits of the byte sequence; trailing bits of the
    // final byte must be zero-padded by the caller or are ignored.
    static BitString from_bytes(std::span<const uint8_t> bytes, size_t nbits);
    // "0"/"1" text form, e.g. "10110".
    static BitString from_binary_text(std::string_view text);

    size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool bit(size_t i) const;
    void set_bit(size_t i, bool value);

    void push_back(bool value);
    void append(const BitString& other);
    void append_uint(uint64_t value, unsigned width_bits);
    uint64_t get_uint(size_t offset, unsigned width_bits) const;

    BitString slice(size_t offset, size_t len) const;

    // Packed bytes, zero-padded in the final partial byte.
    const std::vector<uint8_t>& bytes() const { return bytes_; }
    std::string to_binary_text() const;
    std::string to_hex() const;  // size() must be a byte multiple

    bool operator==(const BitString& other) const {
        return nbits_ == other.nbits_ && bytes_ == other.bytes_;
    }

    // Number of bit positions in which two equal-width strings differ.
    static size_t hamming_distance(const BitString& a, const BitString& b);

  private:
    std::vector<uint8_t> bytes_;
    size_t nbits_ = 0;
};

}  // namespace casket

template <>
struct std::hash<casket::BitString> {
    size_t operator()(const casket::BitString& b) const noexcept {
        size_t h = b.size();
        for (uint8_t byte : b.bytes())
            h = h * 1099511628211ULL + byte;
        return h;
    }
};
