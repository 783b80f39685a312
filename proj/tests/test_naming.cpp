// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "casket/errors.hpp"
#include "casket/naming.hpp"
#include "casket/prbg.hpp"
#include "casket/sha256.hpp"

using namespace casket;

namespace {

std::span<const uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

template <size_t N>
std::array<uint8_t, N> openssl_digest(const EVP_MD* md, std::span<const uint8_t> data) {
    std::array<uint8_t, N> out{};
    unsigned len = 0;
    REQUIRE(EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) == 1);
    REQUIRE(len == N);
    return out;
}

BitString flip_bit(const BitString& bits, size_t index) {
    std::vector<uint8_t> bytes = bits.bytes();
    bytes[index / 8] ^= uint8_t(0x80u >> (index % 8));
    return BitString::from_bytes(bytes, bits.size());
}

// One shared oversize buffer; the ceiling is 100,000,000 bytes.
std::span<const uint8_t> oversize_content() {
    static const std::vector<uint8_t> buf(kMaxContentBytes + 1, 0x5A);
    return buf;
}

}  // namespace

TEST_CASE("scheme names, prefixes and widths") {
    CHECK(scheme_bits(NamingScheme::m) == 128);
    CHECK(scheme_bits(NamingScheme::gm) == 256);
    CHECK(scheme_bits(NamingScheme::mpp) == 256);

    CHECK(scheme_prefix(NamingScheme::m) == "m");
    CHECK(scheme_prefix(NamingScheme::gm) == "gm");
    CHECK(scheme_prefix(NamingScheme::mpp) == "mpp");

    for (NamingScheme s : {NamingScheme::m, NamingScheme::gm, NamingScheme::mpp})
        CHECK(scheme_from_name(scheme_prefix(s)) == s);
    CHECK_THROWS_AS(scheme_from_name("M"), std::invalid_argument);
    CHECK_THROWS_AS(scheme_from_name("md5"), std::invalid_argument);
    CHECK_THROWS_AS(scheme_from_name(""), std::invalid_argument);
}

TEST_CASE("base32 fixed images") {
    CHECK(encode_base32(BitString(128)) == std::string(26, '0'));
    CHECK(encode_base32(BitString(256)) == std::string(52, '0'));

    // All-ones: the final character carries 3 (resp. 1) real bits plus
    // zero padding, so it is not 'V'.
    const std::vector<uint8_t> ones16(16, 0xFF), ones32(32, 0xFF);
    CHECK(encode_base32(BitString::from_bytes(ones16)) == std::string(25, 'V') + "S");
    CHECK(encode_base32(BitString::from_bytes(ones32)) == std::string(51, 'V') + "G");

    CHECK(encode_base32(md5(std::string_view("")).to_bits()) ==
          "QGEOPMCF02P09QC016CEPU22FO");
    CHECK(encode_base32(md5(std::string_view("abc")).to_bits()) ==
          "I00L161SQ97R1LKM7TUIHOBVE8");

    CHECK_THROWS_AS(encode_base32(BitString(130)), std::invalid_argument);
    CHECK_THROWS_AS(encode_base32(BitString(0)), std::invalid_argument);
}

TEST_CASE("base32 decode inverts encode and rejects malformed text") {
    Prbg gen(std::string_view("base32-roundtrip"));
    for (int i = 0; i < 500; ++i) {
        BitString b128 = gen.next_bits(128);
        BitString b256 = gen.next_bits(256);
        CHECK(decode_base32(encode_base32(b128)) == b128);
        CHECK(decode_base32(encode_base32(b256)) == b256);
    }

    const std::string ok26(26, '0');
    CHECK_THROWS_AS(decode_base32(std::string(25, '0')), std::invalid_argument);
    CHECK_THROWS_AS(decode_base32(std::string(27, '0')), std::invalid_argument);
    CHECK_THROWS_AS(decode_base32(std::string(51, '0')), std::invalid_argument);
    CHECK_THROWS_AS(decode_base32(""), std::invalid_argument);

    for (char bad : {'W', 'Z', 'a', 'v', '=', ' ', ':', '-'}) {
        std::string text = ok26;
        text[10] = bad;
        CHECK_THROWS_AS(decode_base32(text), std::invalid_argument);
    }

    // Nonzero padding bits in the final character are rejected: for 128
    // bits the last character holds 3 real bits and 2 padding zeros.
    CHECK_NOTHROW(decode_base32(std::string(25, 'V') + "S"));
    CHECK_THROWS_AS(decode_base32(std::string(25, 'V') + "T"), std::invalid_argument);
    CHECK_THROWS_AS(decode_base32(std::string(25, 'V') + "V"), std::invalid_argument);
    CHECK_NOTHROW(decode_base32(std::string(51, 'V') + "G"));
    CHECK_THROWS_AS(decode_base32(std::string(51, 'V') + "H"), std::invalid_argument);
}

TEST_CASE("ContentAddress construction, text forms and prefixed parsing") {
    const ContentAddress m = compute_m(as_bytes("hello centera"));
    CHECK(m.text() == "FTTDVQ113M7S49TANJG338BQ0K");
    CHECK(m.prefixed_text() == "m:FTTDVQ113M7S49TANJG338BQ0K");
    CHECK(ContentAddress::from_text(NamingScheme::m, m.text()) == m);
    CHECK(ContentAddress::parse_prefixed(m.prefixed_text()) == m);

    const ContentAddress mpp = compute_mpp(as_bytes("hello centera"));
    CHECK(ContentAddress::parse_prefixed(mpp.prefixed_text()) == mpp);
    CHECK(mpp.prefixed_text().substr(0, 4) == "mpp:");

    CHECK_THROWS_AS(ContentAddress(NamingScheme::m, BitString(256)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ContentAddress(NamingScheme::gm, BitString(128)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ContentAddress::parse_prefixed(m.text()), std::invalid_argument);
    CHECK_THROWS_AS(ContentAddress::parse_prefixed("md5:" + m.text()),
                    std::invalid_argument);
    // Scheme width must match the text length: GM text is 52 characters.
    CHECK_THROWS_AS(ContentAddress::parse_prefixed("gm:" + m.text()),
                    std::invalid_argument);
    CHECK_THROWS_AS(ContentAddress::from_text(NamingScheme::mpp, m.text()),
                    std::invalid_argument);
}

TEST_CASE("M addresses are the raw content digest") {
    CHECK(compute_m(as_bytes("")).text() == "QGEOPMCF02P09QC016CEPU22FO");
    CHECK(compute_m(as_bytes("abc")).text() == "I00L161SQ97R1LKM7TUIHOBVE8");

    Prbg gen(std::string_view("naming-m"));
    for (int i = 0; i < 100; ++i) {
        std::vector<uint8_t> content(size_t(gen.next_byte()) + 1);
        for (auto& b : content) b = gen.next_byte();
        const ContentAddress ca = compute_m(content);
        CHECK(ca.scheme() == NamingScheme::m);
        CHECK(ca.bits() == md5(content).to_bits());
    }
}

TEST_CASE("M++ layout: digest, format byte 0x01, truncated second digest") {
    CHECK(compute_mpp(as_bytes("")).text() ==
          "QGEOPMCF02P09QC016CEPU22FO0U7C648ACFO70KJBTV9I4PDUSG");
    CHECK(compute_mpp(as_bytes("abc")).text() ==
          "I00L161SQ97R1LKM7TUIHOBVE80RKU0MNU7G3JVA850K1NITLOH0");

    Prbg gen(std::string_view("naming-mpp"));
    size_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<uint8_t> content(size_t(gen.next_bits(10).get_uint(0, 10)));
        for (auto& b : content) b = gen.next_byte();

        // Assemble the expected image from an independent digest library.
        const auto md5_ref = openssl_digest<16>(EVP_md5(), content);
        const auto sha_ref = openssl_digest<32>(EVP_sha256(), content);
        BitString expected = BitString::from_bytes(md5_ref);
        expected.append_uint(kMppFormatByte, 8);
        expected.append(BitString::from_bytes(sha_ref).slice(0, kMppShaBits));

        const ContentAddress ca = compute_mpp(content);
        if (ca.bits() != expected) ++mismatches;
        if (ca.scheme() != NamingScheme::mpp) ++mismatches;
        // The first 26 text characters coincide with the M address--the
        // format byte's top two bits are zero.
        if (ca.text().substr(0, 26) != compute_m(content).text()) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("GM field layout, draw order and header constant") {
    CHECK(kGmHeaderCode == 0x840);

    const uint64_t now_ms = 3'000'000'000'000;  // divisible by 1024
    AccessNodeContext ctx(7, Prbg(std::string_view("gm-node")), frozen_ms_clock(now_ms));
    CHECK(ctx.node_id() == 7);

    // The counter is initialized from the node generator's first 10 bits.
    Prbg shadow(std::string_view("gm-node"));
    const uint16_t counter_init =
        uint16_t(shadow.next_bits(kGmCBits).get_uint(0, kGmCBits));
    CHECK(ctx.counter() == counter_init);
    CHECK(ctx.generator_bits_consumed() == 10);

    const BitString expected_g = shadow.next_bits(kGmGBits);
    auto [ca, parts] = compute_gm(as_bytes("hello centera"), ctx);
    CHECK(ctx.generator_bits_consumed() == 80);

    CHECK(ca.scheme() == NamingScheme::gm);
    CHECK(ca.bits().size() == 256);
    CHECK(parts.m == md5(std::string_view("hello centera")));
    CHECK(parts.g == expected_g);
    CHECK(parts.t == 2'929'687'500);  // floor(now / 1024), below 2^35
    CHECK(parts.c == counter_init);
    CHECK(parts.h == kGmHeaderCode);

    // Field offsets 0 / 128 / 198 / 233 / 243 in the serialized image.
    const BitString& bits = ca.bits();
    CHECK(bits.slice(0, 128) == md5(std::string_view("hello centera")).to_bits());
    CHECK(bits.slice(128, 70) == expected_g);
    CHECK(bits.get_uint(198, 35) == parts.t);
    CHECK(bits.get_uint(233, 10) == parts.c);
    CHECK(bits.get_uint(243, 13) == kGmHeaderCode);

    CHECK(parse_gm(ca) == parts);
    CHECK(parts.serialize() == bits);
    CHECK(ContentAddress(NamingScheme::gm, parts.serialize()) == ca);

    // Second address from the same node: counter advances by one.
    auto [ca2, parts2] = compute_gm(as_bytes("hello centera"), ctx);
    CHECK(parts2.c == ((counter_init + 1) & 0x3FF));
    CHECK(ca2 != ca);                            // G differs
    CHECK(parse_gm(ca2).m == parts.m);           // same content digest

    CHECK_THROWS_AS(parse_gm(compute_m(as_bytes("x"))), std::invalid_argument);
    GmComponents bad;
    bad.g = BitString(69);
    CHECK_THROWS_AS(bad.serialize(), std::invalid_argument);
}

TEST_CASE("GM timestamp is a 35-bit 1024 ms tick count") {
    auto t_for = [](uint64_t now_ms) {
        AccessNodeContext ctx(0, Prbg(std::string_view("t")), frozen_ms_clock(now_ms));
        return ctx.timestamp_units();
    };
    CHECK(t_for(0) == 0);
    CHECK(t_for(1023) == 0);
    CHECK(t_for(1024) == 1);
    CHECK(t_for(2048) == 2);
    const uint64_t wrap = (uint64_t{1} << 35) * 1024;
    CHECK(t_for(wrap - 1024) == (uint64_t{1} << 35) - 1);
    CHECK(t_for(wrap) == 0);  // 35-bit wraparound
    CHECK(t_for(wrap + 5 * 1024) == 5);
}

TEST_CASE("GM counter wraps mod 1024 and resume masking holds") {
    AccessNodeContext at_edge(1, Prbg(std::string_view("edge")), frozen_ms_clock(0),
                              1023);
    CHECK(at_edge.counter() == 1023);
    CHECK(at_edge.generator_bits_consumed() == 0);  // resumed, no init draw
    CHECK(at_edge.take_counter() == 1023);
    CHECK(at_edge.counter() == 0);
    CHECK(at_edge.take_counter() == 0);

    AccessNodeContext masked(2, Prbg(std::string_view("mask")), frozen_ms_clock(0),
                             0xFFFF);
    CHECK(masked.counter() == 0x3FF);
}

TEST_CASE("GM addresses from one node are distinct and cycle the counter") {
    const uint64_t now_ms = 1'755'129'600'000;
    AccessNodeContext ctx(0, Prbg(std::string_view("gm-uniq")), frozen_ms_clock(now_ms));
    const uint16_t c0 = ctx.counter();
    const auto content = as_bytes("same content every time");

    std::set<std::string> texts;
    size_t bad_fields = 0;
    for (int i = 0; i < 3000; ++i) {
        auto [ca, parts] = compute_gm(content, ctx);
        texts.insert(ca.text());
        if (parts.c != ((c0 + i) & 0x3FF)) ++bad_fields;
        if (parts.t != (now_ms / 1024)) ++bad_fields;
        if (parts.m != md5(content)) ++bad_fields;
    }
    CHECK(texts.size() == 3000);  // the 70 random bits keep addresses unique
    CHECK(bad_fields == 0);
    CHECK(ctx.counter() == ((c0 + 3000) & 0x3FF));

    // Distinct node seeds give unrelated G streams.
    AccessNodeContext other(1, Prbg(std::string_view("gm-uniq-2")),
                            frozen_ms_clock(now_ms));
    auto [ca_other, parts_other] = compute_gm(content, other);
    CHECK(!texts.contains(ca_other.text()));
}

TEST_CASE("content_fields_match checks exactly the content-derived fields") {
    const auto content = as_bytes("the stored object");
    const auto other = as_bytes("different bytes");

    const ContentAddress m = compute_m(content);
    CHECK(content_fields_match(m, content));
    CHECK(!content_fields_match(m, other));
    CHECK(!content_fields_match(
        ContentAddress(m.scheme(), flip_bit(m.bits(), 3)), content));

    AccessNodeContext ctx(0, Prbg(std::string_view("match")), frozen_ms_clock(0));
    const ContentAddress gm = compute_gm(content, ctx).first;
    CHECK(content_fields_match(gm, content));
    CHECK(!content_fields_match(gm, other));
    // G, T, C, H are not functions of the content: tampering there does not
    // break the match, tampering the digest field does.
    CHECK(content_fields_match(
        ContentAddress(NamingScheme::gm, flip_bit(gm.bits(), 128)), content));
    CHECK(content_fields_match(
        ContentAddress(NamingScheme::gm, flip_bit(gm.bits(), 255)), content));
    CHECK(!content_fields_match(
        ContentAddress(NamingScheme::gm, flip_bit(gm.bits(), 0)), content));

    const ContentAddress mpp = compute_mpp(content);
    CHECK(content_fields_match(mpp, content));
    CHECK(!content_fields_match(mpp, other));
    // Every M++ bit is content-derived (or the fixed format byte).
    for (size_t bit : {size_t{0}, size_t{127}, size_t{128}, size_t{135},
                       size_t{136}, size_t{255}})
        CHECK(!content_fields_match(
            ContentAddress(NamingScheme::mpp, flip_bit(mpp.bits(), bit)), content));
}

TEST_CASE("content over the 100 MB ceiling is rejected everywhere") {
    const auto big = oversize_content();
    const auto limit = big.subspan(0, kMaxContentBytes);

    CHECK_THROWS_AS(compute_m(big), OversizeError);
    CHECK_THROWS_AS(compute_mpp(big), OversizeError);

    AccessNodeContext ctx(0, Prbg(std::string_view("big")), frozen_ms_clock(0));
    const uint64_t consumed = ctx.generator_bits_consumed();
    CHECK_THROWS_AS(compute_gm(big, ctx), OversizeError);
    CHECK(ctx.generator_bits_consumed() == consumed);  // no bits wasted

    CHECK(!content_fields_match(compute_m(as_bytes("x")), big));

    // Exactly at the ceiling is accepted.
    const ContentAddress at_limit = compute_m(limit);
    CHECK(content_fields_match(at_limit, limit));
}
