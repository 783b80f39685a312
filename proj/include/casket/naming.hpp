// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "casket/bitstring.hpp"
#include "casket/md5.hpp"
#include "casket/prbg.hpp"

namespace casket {

// Content over this is rejected by the naming and store layers.
constexpr uint64_t kMaxContentBytes = 100'000'000;

enum class NamingScheme : uint8_t {
    m = 1,    // 128-bit, raw MD5 of content
    gm = 2,   // 256-bit, MD5 || random || timestamp || counter || header
    mpp = 3,  // 256-bit, MD5 || format byte || truncated SHA-256
};

unsigned scheme_bits(NamingScheme scheme);          // 128 or 256
std::string_view scheme_prefix(NamingScheme scheme);  // "m", "gm", "mpp"
NamingScheme scheme_from_name(std::string_view name);

/// Base32 text form of a 128- or 256-bit string: 5 bits per character over
/// the alphabet 0-9 A-V, MSB first, with the final character's unused low
/// bits zero. 128 bits -> 26 characters, 256 bits -> 52 characters.
std::string encode_base32(const BitString& bits);

/// Inverse of encode_base32. Rejects characters outside the alphabet,
/// lengths other than 26/52, and nonzero padding bits.
BitString decode_base32(std::string_view text);

class ContentAddress {
  public:
    ContentAddress(NamingScheme scheme, BitString bits);

    NamingScheme scheme() const { return scheme_; }
    const BitString& bits() const { return bits_; }
    std::string text() const { return encode_base32(bits_); }
    // "m:..." / "gm:..." / "mpp:..." -- the canonical CLI and on-disk form.
    std::string prefixed_text() const;

    static ContentAddress from_text(NamingScheme scheme, std::string_view text);
    static ContentAddress parse_prefixed(std::string_view prefixed);

    bool operator==(const ContentAddress&) const = default;

  private:
    NamingScheme scheme_;
    BitString bits_;
};

// GM bit layout: M || G || T || C || H, big-endian within each field.
// Field widths below; offsets are 0 / 128 / 198 / 233 / 243.
constexpr unsigned kGmMBits = 128;
constexpr unsigned kGmGBits = 70;
constexpr unsigned kGmTBits = 35;
constexpr unsigned kGmCBits = 10;
constexpr unsigned kGmHBits = 13;
static_assert(kGmMBits + kGmGBits + kGmTBits + kGmCBits + kGmHBits == 256);

// One unit of T is 1024 milliseconds.
constexpr uint64_t kGmTimestampUnitMs = 1024;

// H layout: scheme id (3 bits) || format version (4 bits) || reserved zeros
// (6 bits). A format constant, not content-derived.
constexpr uint16_t kGmHeaderCode =
    static_cast<uint16_t>(static_cast<uint16_t>(NamingScheme::gm) << 10 | 1u << 6);

// M++ layout: MD5 (128) || format byte (8) || leftmost 120 bits of SHA-256.
constexpr uint8_t kMppFormatByte = 0x01;
constexpr unsigned kMppShaBits = 120;

struct GmComponents {
    Digest128 m{};
    BitString g;      // 70 bits
    uint64_t t = 0;   // 35-bit timestamp in 1024 ms units
    uint16_t c = 0;   // 10-bit counter value
    uint16_t h = 0;   // 13-bit header code

    BitString serialize() const;  // the 256-bit M || G || T || C || H image
    bool operator==(const GmComponents&) const = default;
};

/// Millisecond clock since the Unix epoch.
using MsClock = std::function<uint64_t()>;
MsClock system_ms_clock();
MsClock frozen_ms_clock(uint64_t now_ms);

/// Per-access-node state feeding GM address generation: a 10-bit counter
/// (initial value drawn from the node's generator, wraps every 1024 files),
/// a millisecond clock, and the node's own bit generator.
///
/// Single-owner: concurrent GM writes must go through distinct contexts.
class AccessNodeContext {
  public:
    AccessNodeContext(uint32_t node_id, Prbg prbg, MsClock clock);
    /// Resumes a persisted node: the counter is restored rather than drawn,
    /// and the generator is expected to be pre-positioned by the caller.
    AccessNodeContext(uint32_t node_id, Prbg prbg, MsClock clock, uint16_t counter);

    uint32_t node_id() const { return node_id_; }
    uint16_t counter() const { return counter_; }
    uint64_t generator_bits_consumed() const { return prbg_.bits_consumed(); }

    // Draw order per address: 70 G bits, then timestamp, then counter
    // post-increment. The counter init consumes the generator's first 10
    // bits at construction.
    BitString draw_g() { return prbg_.next_bits(kGmGBits); }
    uint64_t timestamp_units() const;
    uint16_t take_counter();

  private:
    uint32_t node_id_;
    Prbg prbg_;
    MsClock clock_;
    uint16_t counter_;
};

ContentAddress compute_m(std::span<const uint8_t> content);
std::pair<ContentAddress, GmComponents> compute_gm(std::span<const uint8_t> content,
                                                   AccessNodeContext& ctx);
ContentAddress compute_mpp(std::span<const uint8_t> content);

/// Splits a GM address at offsets 0/128/198/233/243 into M, G, T, C, H.
GmComponents parse_gm(const ContentAddress& ca);

/// True when the content-derived fields of ca match content: the whole
/// address for M and M++, the leading m field only for GM (g/t/c/h are not
/// functions of the content). Oversize content never matches.
bool content_fields_match(const ContentAddress& ca, std::span<const uint8_t> content);

}  // namespace casket
