// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace casket {

BitString BitString::from_bytes(std::span<const uint8_t> bytes) {
    return from_bytes(bytes, bytes.size() * 8);
}

BitString BitString::from_bytes(std::span<const uint8_t> bytes, size_t nbits) {
    if (nbits > bytes.size() * 8)
        throw std::invalid_argument("BitString: nbits exceeds byte span");
    BitString out(nbits);
    for (size_t i = 0; i < (nbits + 7) / 8; ++i)
        out.bytes_[i] = bytes[i];
    // Clear any tail bits beyond nbits.
    if (nbits % 8 != 0)
        out.bytes_.back() &= static_cast<uint8_t>(0xFF << (8 - nbits % 8));
    return out;
}

BitString BitString::from_binary_text(std::string_view text) {
    BitString out;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BitString: binary text must be 0/1");
        out.push_back(c == '1');
    }
    return out;
}

bool BitString::bit(size_t i) const {
    if (i >= nbits_)
        throw std::out_of_range("BitString: bit index out of range");
    return (bytes_[i / 8] >> (7 - i % 8)) & 1;
}

void BitString::set_bit(size_t i, bool value) {
    if (i >= nbits_)
        throw std::out_of_range("BitString: bit index out of range");
    const uint8_t mask = static_cast<uint8_t>(1u << (7 - i % 8));
    if (value)
        bytes_[i / 8] |= mask;
    else
        bytes_[i / 8] &= static_cast<uint8_t>(~mask);
}

void BitString::push_back(bool value) {
    if (nbits_ % 8 == 0)
        bytes_.push_back(0);
    ++nbits_;
    if (value)
        set_bit(nbits_ - 1, true);
}

void BitString::append(const BitString& other) {
    if (nbits_ % 8 == 0) {
        // Byte-aligned fast path.
        bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
        nbits_ += other.nbits_;
        return;
    }
    for (size_t i = 0; i < other.nbits_; ++i)
        push_back(other.bit(i));
}

void BitString::append_uint(uint64_t value, unsigned width_bits) {
    if (width_bits > 64)
        throw std::invalid_argument("BitString: field width exceeds 64 bits");
    if (width_bits < 64 && (value >> width_bits) != 0)
        throw std::invalid_argument("BitString: value does not fit field width");
    for (unsigned i = 0; i < width_bits; ++i)
        push_back((value >> (width_bits - 1 - i)) & 1);
}

uint64_t BitString::get_uint(size_t offset, unsigned width_bits) const {
    if (width_bits > 64)
        throw std::invalid_argument("BitString: field width exceeds 64 bits");
    if (offset + width_bits > nbits_)
        throw std::out_of_range("BitString: field extends past end");
    uint64_t v = 0;
    for (unsigned i = 0; i < width_bits; ++i)
        v = (v << 1) | (bit(offset + i) ? 1u : 0u);
    return v;
}

BitString BitString::slice(size_t offset, size_t len) const {
    if (offset + len > nbits_)
        throw std::out_of_range("BitString: slice extends past end");
    BitString out;
    out.bytes_.reserve((len + 7) / 8);
    for (size_t i = 0; i < len; ++i)
        out.push_back(bit(offset + i));
    return out;
}

std::string BitString::to_binary_text() const {
    std::string s(nbits_, '0');
    for (size_t i = 0; i < nbits_; ++i)
        if (bit(i))
            s[i] = '1';
    return s;
}

std::string BitString::to_hex() const {
    if (nbits_ % 8 != 0)
        throw std::invalid_argument("BitString: hex form requires byte-aligned width");
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (uint8_t b : bytes_) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

size_t BitString::hamming_distance(const BitString& a, const BitString& b) {
    if (a.nbits_ != b.nbits_)
        throw std::invalid_argument("BitString: hamming distance requires equal widths");
    size_t d = 0;
    for (size_t i = 0; i < a.bytes_.size(); ++i)
        d += std::popcount(static_cast<unsigned>(a.bytes_[i] ^ b.bytes_[i]));
    return d;
}

}  // namespace casket
