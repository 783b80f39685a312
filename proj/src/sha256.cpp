// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/sha256.hpp"

#include <bit>
#include <stdexcept>

namespace casket {
namespace {

constexpr uint32_t kRoundConstants[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

inline uint32_t load_be32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) << 24 | static_cast<uint32_t>(p[1]) << 16 |
           static_cast<uint32_t>(p[2]) << 8 | static_cast<uint32_t>(p[3]);
}

}  // namespace

void Sha256::reset() {
    h_ = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
          0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    buf_.fill(0);
    buf_len_ = 0;
    total_bytes_ = 0;
}

void Sha256::compress(const uint8_t block[64]) {
    uint32_t w[64];
    for (unsigned i = 0; i < 16; ++i)
        w[i] = load_be32(block + 4 * i);
    for (unsigned i = 16; i < 64; ++i) {
        const uint32_t s0 =
            std::rotr(w[i - 15], 7) ^ std::rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
        const uint32_t s1 =
            std::rotr(w[i - 2], 17) ^ std::rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
        w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }

    uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3];
    uint32_t e = h_[4], f = h_[5], g = h_[6], h = h_[7];
    for (unsigned i = 0; i < 64; ++i) {
        const uint32_t S1 = std::rotr(e, 6) ^ std::rotr(e, 11) ^ std::rotr(e, 25);
        const uint32_t ch = (e & f) ^ (~e & g);
        const uint32_t t1 = h + S1 + ch + kRoundConstants[i] + w[i];
        const uint32_t S0 = std::rotr(a, 2) ^ std::rotr(a, 13) ^ std::rotr(a, 22);
        const uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
        const uint32_t t2 = S0 + maj;
        h = g;
        g = f;
        f = e;
        e = d + t1;
        d = c;
        c = b;
        b = a;
        a = t1 + t2;
    }

    h_[0] += a;
    h_[1] += b;
    h_[2] += c;
    h_[3] += d;
    h_[4] += e;
    h_[5] += f;
    h_[6] += g;
    h_[7] += h;
}

void Sha256::update(std::span<const uint8_t> data) {
    total_bytes_ += data.size();
    size_t off = 0;
    if (buf_len_ > 0) {
        const size_t take = std::min(data.size(), buf_.size() - buf_len_);
        std::copy_n(data.data(), take, buf_.data() + buf_len_);
        buf_len_ += take;
        off += take;
        if (buf_len_ == buf_.size()) {
            compress(buf_.data());
            buf_len_ = 0;
        }
    }
    while (data.size() - off >= 64) {
        compress(data.data() + off);
        off += 64;
    }
    if (off < data.size()) {
        std::copy_n(data.data() + off, data.size() - off, buf_.data());
        buf_len_ = data.size() - off;
    }
}

void Sha256::update(std::string_view data) {
    update(std::span(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

Digest256 Sha256::finish() {
    // FIPS padding: 0x80, zeros, then the bit length big-endian.
    const uint64_t bit_len = total_bytes_ * 8;
    buf_[buf_len_++] = 0x80;
    if (buf_len_ > 56) {
        std::fill(buf_.begin() + static_cast<long>(buf_len_), buf_.end(), 0);
        compress(buf_.data());
        buf_len_ = 0;
    }
    std::fill(buf_.begin() + static_cast<long>(buf_len_), buf_.end(), 0);
    for (unsigned i = 0; i < 8; ++i)
        buf_[56 + i] = static_cast<uint8_t>(bit_len >> (8 * (7 - i)));
    compress(buf_.data());

    Digest256 out;
    for (unsigned i = 0; i < 8; ++i) {
        out.bytes[4 * i] = static_cast<uint8_t>(h_[i] >> 24);
        out.bytes[4 * i + 1] = static_cast<uint8_t>(h_[i] >> 16);
        out.bytes[4 * i + 2] = static_cast<uint8_t>(h_[i] >> 8);
        out.bytes[4 * i + 3] = static_cast<uint8_t>(h_[i]);
    }
    reset();
    return out;
}

Digest256 sha256(std::span<const uint8_t> data) {
    Sha256 ctx;
    ctx.update(data);
    return ctx.finish();
}

Digest256 sha256(std::string_view data) {
    Sha256 ctx;
    ctx.update(data);
    return ctx.finish();
}

std::string Digest256::to_hex() const {
    return BitString::from_bytes(bytes).to_hex();
}

Digest256 Digest256::from_hex(std::string_view hex) {
    if (hex.size() != 64)
        throw std::invalid_argument("Digest256: hex form must be 64 characters");
    Digest256 d;
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw std::invalid_argument("Digest256: bad hex character");
    };
    for (size_t i = 0; i < 32; ++i)
        d.bytes[i] = static_cast<uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return d;
}

}  // namespace casket
