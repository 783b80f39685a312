// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/md5.hpp"

#include <bit>
#include <stdexcept>

namespace casket {
namespace {

// T[i] = floor(2^32 * |sin(i+1)|), RFC 1321.
constexpr uint32_t kStepConstants[64] = {
    0xd76aa478, 0xe8c7b756, 0x242070db, 0xc1bdceee, 0xf57c0faf, 0x4787c62a,
    0xa8304613, 0xfd469501, 0x698098d8, 0x8b44f7af, 0xffff5bb1, 0x895cd7be,
    0x6b901122, 0xfd987193, 0xa679438e, 0x49b40821, 0xf61e2562, 0xc040b340,
    0x265e5a51, 0xe9b6c7aa, 0xd62f105d, 0x02441453, 0xd8a1e681, 0xe7d3fbc8,
    0x21e1cde6, 0xc33707d6, 0xf4d50d87, 0x455a14ed, 0xa9e3e905, 0xfcefa3f8,
    0x676f02d9, 0x8d2a4c8a, 0xfffa3942, 0x8771f681, 0x6d9d6122, 0xfde5380c,
    0xa4beea44, 0x4bdecfa9, 0xf6bb4b60, 0xbebfbc70, 0x289b7ec6, 0xeaa127fa,
    0xd4ef3085, 0x04881d05, 0xd9d4d039, 0xe6db99e5, 0x1fa27cf8, 0xc4ac5665,
    0xf4292244, 0x432aff97, 0xab9423a7, 0xfc93a039, 0x655b59c3, 0x8f0ccc92,
    0xffeff47d, 0x85845dd1, 0x6fa87e4f, 0xfe2ce6e0, 0xa3014314, 0x4e0811a1,
    0xf7537e82, 0xbd3af235, 0x2ad7d2bb, 0xeb86d391};

constexpr unsigned kShifts[4][4] = {
    {7, 12, 17, 22}, {5, 9, 14, 20}, {4, 11, 16, 23}, {6, 10, 15, 21}};

// Word access order per round: 1: i, 2: 1+5i, 3: 5+3i, 4: 7i (mod 16).
inline unsigned word_index(unsigned round, unsigned step) {
    switch (round) {
        case 0: return step;
        case 1: return (1 + 5 * step) % 16;
        case 2: return (5 + 3 * step) % 16;
        default: return (7 * step) % 16;
    }
}

}  // namespace

uint32_t md5_phi(unsigned round_index, uint32_t x, uint32_t y, uint32_t z) {
    switch (round_index) {
        case 1: return (x & y) | (~x & z);
        case 2: return (x & z) | (y & ~z);
        case 3: return x ^ y ^ z;
        case 4: return y ^ (x | ~z);
        default: throw std::out_of_range("md5_phi: round_index must be 1..4");
    }
}

Md5State md5_compress(const Md5State& state, const MessageBlock512& block) {
    uint32_t words[16];
    for (unsigned i = 0; i < 16; ++i)
        words[i] = static_cast<uint32_t>(block[4 * i]) |
                   static_cast<uint32_t>(block[4 * i + 1]) << 8 |
                   static_cast<uint32_t>(block[4 * i + 2]) << 16 |
                   static_cast<uint32_t>(block[4 * i + 3]) << 24;

    uint32_t a = state.a, b = state.b, c = state.c, d = state.d;
    for (unsigned step = 0; step < 64; ++step) {
        const unsigned round = step / 16;
        a += md5_phi(round + 1, b, c, d) + words[word_index(round, step % 16)] +
             kStepConstants[step];
        a = std::rotl(a, static_cast<int>(kShifts[round][step % 4])) + b;
        // Rotate roles: the next step updates what is currently d.
        const uint32_t t = d;
        d = c;
        c = b;
        b = a;
        a = t;
    }

    Md5State out = state;
    out.a += a;
    out.b += b;
    out.c += c;
    out.d += d;
    return out;
}

std::array<uint8_t, 16> Md5State::serialize() const {
    std::array<uint8_t, 16> out;
    const uint32_t words[4] = {a, b, c, d};
    for (unsigned i = 0; i < 4; ++i) {
        out[4 * i] = static_cast<uint8_t>(words[i]);
        out[4 * i + 1] = static_cast<uint8_t>(words[i] >> 8);
        out[4 * i + 2] = static_cast<uint8_t>(words[i] >> 16);
        out[4 * i + 3] = static_cast<uint8_t>(words[i] >> 24);
    }
    return out;
}

Md5State Md5State::deserialize(std::span<const uint8_t, 16> bytes) {
    Md5State s;
    uint32_t words[4];
    for (unsigned i = 0; i < 4; ++i)
        words[i] = static_cast<uint32_t>(bytes[4 * i]) |
                   static_cast<uint32_t>(bytes[4 * i + 1]) << 8 |
                   static_cast<uint32_t>(bytes[4 * i + 2]) << 16 |
                   static_cast<uint32_t>(bytes[4 * i + 3]) << 24;
    s.a = words[0];
    s.b = words[1];
    s.c = words[2];
    s.d = words[3];
    return s;
}

void Md5::update(std::span<const uint8_t> data) {
    total_bytes_ += data.size();
    size_t off = 0;
    if (buf_len_ > 0) {
        const size_t take = std::min(data.size(), buf_.size() - buf_len_);
        std::copy_n(data.data(), take, buf_.data() + buf_len_);
        buf_len_ += take;
        off += take;
        if (buf_len_ == buf_.size()) {
            state_ = md5_compress(state_, buf_);
            buf_len_ = 0;
        }
    }
    while (data.size() - off >= 64) {
        MessageBlock512 block;
        std::copy_n(data.data() + off, 64, block.data());
        state_ = md5_compress(state_, block);
        off += 64;
    }
    if (off < data.size()) {
        std::copy_n(data.data() + off, data.size() - off, buf_.data());
        buf_len_ = data.size() - off;
    }
}

void Md5::update(std::string_view data) {
    update(std::span(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

Digest128 Md5::finish() {
    // RFC 1321 padding: 0x80, zeros, then the bit length as a 64-bit
    // little-endian quantity.
    const uint64_t bit_len = total_bytes_ * 8;
    buf_[buf_len_++] = 0x80;
    if (buf_len_ > 56) {
        std::fill(buf_.begin() + static_cast<long>(buf_len_), buf_.end(), 0);
        state_ = md5_compress(state_, buf_);
        buf_len_ = 0;
    }
    std::fill(buf_.begin() + static_cast<long>(buf_len_), buf_.end(), 0);
    for (unsigned i = 0; i < 8; ++i)
        buf_[56 + i] = static_cast<uint8_t>(bit_len >> (8 * i));
    state_ = md5_compress(state_, buf_);

    Digest128 out{state_.serialize()};
    reset();
    return out;
}

void Md5::reset() {
    state_ = Md5State{};
    buf_.fill(0);
    buf_len_ = 0;
    total_bytes_ = 0;
}

Digest128 md5(std::span<const uint8_t> data) {
    Md5 ctx;
    ctx.update(data);
    return ctx.finish();
}

Digest128 md5(std::string_view data) {
    Md5 ctx;
    ctx.update(data);
    return ctx.finish();
}

std::string Digest128::to_hex() const {
    return BitString::from_bytes(bytes).to_hex();
}

Digest128 Digest128::from_hex(std::string_view hex) {
    if (hex.size() != 32)
        throw std::invalid_argument("Digest128: hex form must be 32 characters");
    Digest128 d;
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw std::invalid_argument("Digest128: bad hex character");
    };
    for (size_t i = 0; i < 16; ++i)
        d.bytes[i] = static_cast<uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return d;
}

}  // namespace casket
