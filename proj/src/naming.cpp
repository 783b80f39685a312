// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/naming.hpp"

#include <chrono>
#include <stdexcept>

#include "casket/errors.hpp"
#include "casket/sha256.hpp"

namespace casket {
namespace {

constexpr char kBase32Alphabet[] = "0123456789ABCDEFGHIJKLMNOPQRSTUV";

int base32_value(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'A' && c <= 'V')
        return c - 'A' + 10;
    return -1;
}

void check_size(std::span<const uint8_t> content) {
    if (content.size() > kMaxContentBytes)
        throw OversizeError("content exceeds the 100 MB ceiling");
}

}  // namespace

unsigned scheme_bits(NamingScheme scheme) {
    return scheme == NamingScheme::m ? 128u : 256u;
}

std::string_view scheme_prefix(NamingScheme scheme) {
    switch (scheme) {
        case NamingScheme::m: return "m";
        case NamingScheme::gm: return "gm";
        case NamingScheme::mpp: return "mpp";
    }
    throw std::invalid_argument("unknown naming scheme");
}

NamingScheme scheme_from_name(std::string_view name) {
    if (name == "m") return NamingScheme::m;
    if (name == "gm") return NamingScheme::gm;
    if (name == "mpp") return NamingScheme::mpp;
    throw std::invalid_argument("unknown naming scheme '" + std::string(name) + "'");
}

std::string encode_base32(const BitString& bits) {
    if (bits.size() != 128 && bits.size() != 256)
        throw std::invalid_argument("encode_base32: width must be 128 or 256 bits");
    const size_t nchars = (bits.size() + 4) / 5;
    std::string out;
    out.reserve(nchars);
    for (size_t i = 0; i < nchars; ++i) {
        unsigned group = 0;
        for (size_t j = 0; j < 5; ++j) {
            const size_t idx = 5 * i + j;
            group = group << 1 | (idx < bits.size() && bits.bit(idx) ? 1u : 0u);
        }
        out.push_back(kBase32Alphabet[group]);
    }
    return out;
}

BitString decode_base32(std::string_view text) {
    size_t nbits;
    if (text.size() == 26)
        nbits = 128;
    else if (text.size() == 52)
        nbits = 256;
    else
        throw std::invalid_argument("decode_base32: length must be 26 or 52 characters");

    BitString bits;
    for (size_t i = 0; i < text.size(); ++i) {
        const int v = base32_value(text[i]);
        if (v < 0)
            throw std::invalid_argument("decode_base32: character outside 0-9 A-V");
        for (int j = 4; j >= 0; --j) {
            const size_t idx = bits.size();
            const bool bit = (v >> j) & 1;
            if (idx >= nbits) {
                if (bit)
                    throw std::invalid_argument("decode_base32: nonzero padding bits");
                continue;
            }
            bits.push_back(bit);
        }
    }
    return bits;
}

ContentAddress::ContentAddress(NamingScheme scheme, BitString bits)
    : scheme_(scheme), bits_(std::move(bits)) {
    if (bits_.size() != scheme_bits(scheme_))
        throw std::invalid_argument("ContentAddress: width does not match scheme");
}

std::string ContentAddress::prefixed_text() const {
    return std::string(scheme_prefix(scheme_)) + ":" + text();
}

ContentAddress ContentAddress::from_text(NamingScheme scheme, std::string_view text) {
    return ContentAddress(scheme, decode_base32(text));
}

ContentAddress ContentAddress::parse_prefixed(std::string_view prefixed) {
    const size_t colon = prefixed.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("content address must be scheme-prefixed, e.g. m:...");
    const NamingScheme scheme = scheme_from_name(prefixed.substr(0, colon));
    return from_text(scheme, prefixed.substr(colon + 1));
}

BitString GmComponents::serialize() const {
    if (g.size() != kGmGBits)
        throw std::invalid_argument("GmComponents: G must be 70 bits");
    BitString bits = BitString::from_bytes(m.bytes);
    bits.append(g);
    bits.append_uint(t, kGmTBits);
    bits.append_uint(c, kGmCBits);
    bits.append_uint(h, kGmHBits);
    return bits;
}

MsClock system_ms_clock() {
    return [] {
        return static_cast<uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    };
}

MsClock frozen_ms_clock(uint64_t now_ms) {
    return [now_ms] { return now_ms; };
}

AccessNodeContext::AccessNodeContext(uint32_t node_id, Prbg prbg, MsClock clock)
    : node_id_(node_id), prbg_(std::move(prbg)), clock_(std::move(clock)) {
    counter_ = static_cast<uint16_t>(prbg_.next_bits(kGmCBits).get_uint(0, kGmCBits));
}

AccessNodeContext::AccessNodeContext(uint32_t node_id, Prbg prbg, MsClock clock, uint16_t counter)
    : node_id_(node_id), prbg_(std::move(prbg)), clock_(std::move(clock)),
      counter_(static_cast<uint16_t>(counter & ((1u << kGmCBits) - 1))) {}

uint64_t AccessNodeContext::timestamp_units() const {
    return (clock_() / kGmTimestampUnitMs) & ((uint64_t{1} << kGmTBits) - 1);
}

uint16_t AccessNodeContext::take_counter() {
    const uint16_t value = counter_;
    counter_ = static_cast<uint16_t>((counter_ + 1) & 0x3FF);
    return value;
}

ContentAddress compute_m(std::span<const uint8_t> content) {
    check_size(content);
    return ContentAddress(NamingScheme::m, md5(content).to_bits());
}

std::pair<ContentAddress, GmComponents> compute_gm(std::span<const uint8_t> content,
                                                   AccessNodeContext& ctx) {
    check_size(content);
    GmComponents parts;
    parts.m = md5(content);
    parts.g = ctx.draw_g();
    parts.t = ctx.timestamp_units();
    parts.c = ctx.take_counter();
    parts.h = kGmHeaderCode;
    return {ContentAddress(NamingScheme::gm, parts.serialize()), parts};
}

ContentAddress compute_mpp(std::span<const uint8_t> content) {
    check_size(content);
    BitString bits = md5(content).to_bits();
    bits.append_uint(kMppFormatByte, 8);
    bits.append(sha256(content).to_bits().slice(0, kMppShaBits));
    return ContentAddress(NamingScheme::mpp, bits);
}

GmComponents parse_gm(const ContentAddress& ca) {
    if (ca.scheme() != NamingScheme::gm)
        throw std::invalid_argument("parse_gm: address is not GM");
    const BitString& bits = ca.bits();
    GmComponents parts;
    const auto m_bytes = bits.slice(0, kGmMBits).bytes();
    std::copy_n(m_bytes.begin(), 16, parts.m.bytes.begin());
    parts.g = bits.slice(kGmMBits, kGmGBits);
    parts.t = bits.get_uint(kGmMBits + kGmGBits, kGmTBits);
    parts.c = static_cast<uint16_t>(bits.get_uint(kGmMBits + kGmGBits + kGmTBits, kGmCBits));
    parts.h = static_cast<uint16_t>(
        bits.get_uint(kGmMBits + kGmGBits + kGmTBits + kGmCBits, kGmHBits));
    return parts;
}

bool content_fields_match(const ContentAddress& ca, std::span<const uint8_t> content) {
    if (content.size() > kMaxContentBytes) return false;
    switch (ca.scheme()) {
        case NamingScheme::m:
            return md5(content).to_bits() == ca.bits();
        case NamingScheme::gm:
            return md5(content).to_bits() == ca.bits().slice(0, kGmMBits);
        case NamingScheme::mpp:
            return compute_mpp(content).bits() == ca.bits();
    }
    return false;
}

}  // namespace casket
