// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/prbg.hpp"

#include <random>
#include <stdexcept>

namespace casket {

Prbg::Prbg(std::span<const uint8_t> seed) : seed_(seed.begin(), seed.end()) {}

Prbg::Prbg(std::string_view seed)
    : Prbg(std::span(reinterpret_cast<const uint8_t*>(seed.data()), seed.size())) {}

Prbg Prbg::from_entropy() {
    std::random_device rd;
    std::vector<uint8_t> seed(32);
    for (size_t i = 0; i < seed.size(); i += 4) {
        const uint32_t v = rd();
        for (size_t j = 0; j < 4; ++j)
            seed[i + j] = static_cast<uint8_t>(v >> (8 * j));
    }
    return Prbg(std::span<const uint8_t>(seed));
}

void Prbg::refill() {
    Sha256 ctx;
    ctx.update(std::span<const uint8_t>(seed_));
    uint8_t ctr[8];
    for (unsigned i = 0; i < 8; ++i)
        ctr[i] = static_cast<uint8_t>(counter_ >> (8 * (7 - i)));
    ctx.update(std::span<const uint8_t>(ctr, 8));
    block_ = ctx.finish().bytes;
    ++counter_;
    bit_pos_ = 0;
}

void Prbg::seek(uint64_t bit_offset) {
    counter_ = bit_offset / 256;
    refill();
    bit_pos_ = bit_offset % 256;
}

bool Prbg::next_bit() {
    if (bit_pos_ >= 256)
        refill();
    const bool b = (block_[bit_pos_ / 8] >> (7 - bit_pos_ % 8)) & 1;
    ++bit_pos_;
    return b;
}

uint8_t Prbg::next_byte() {
    if (bit_pos_ >= 256)
        refill();
    if (bit_pos_ % 8 == 0) {
        const uint8_t b = block_[bit_pos_ / 8];
        bit_pos_ += 8;
        return b;
    }
    uint8_t b = 0;
    for (unsigned i = 0; i < 8; ++i)
        b = static_cast<uint8_t>(b << 1 | (next_bit() ? 1 : 0));
    return b;
}

uint64_t Prbg::next_u64() {
    uint64_t v = 0;
    for (unsigned i = 0; i < 8; ++i)
        v = v << 8 | next_byte();
    return v;
}

BitString Prbg::next_bits(size_t n) {
    if (n == 0)
        throw std::invalid_argument("Prbg: bit count must be >= 1");
    BitString out;
    size_t remaining = n;
    // Serve leading bits until byte-aligned in the stream, then whole bytes.
    while (remaining > 0 && bit_pos_ % 8 != 0) {
        out.push_back(next_bit());
        --remaining;
    }
    while (remaining >= 8) {
        const uint8_t byte[1] = {next_byte()};
        out.append(BitString::from_bytes(byte));
        remaining -= 8;
    }
    while (remaining > 0) {
        out.push_back(next_bit());
        --remaining;
    }
    return out;
}

}  // namespace casket
