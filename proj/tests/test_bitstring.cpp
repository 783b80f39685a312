// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "casket/bitstring.hpp"

using casket::BitString;

TEST_CASE("empty bit string") {
    BitString b;
    CHECK(b.size() == 0);
    CHECK(b.empty());
    CHECK(b.to_binary_text() == "");
    CHECK(b.bytes().empty());
}

TEST_CASE("from_binary_text round-trips and indexes MSB-first") {
    BitString b = BitString::from_binary_text("10110");
    CHECK(b.size() == 5);
    CHECK(b.bit(0) == true);
    CHECK(b.bit(1) == false);
    CHECK(b.bit(2) == true);
    CHECK(b.bit(3) == true);
    CHECK(b.bit(4) == false);
    CHECK(b.to_binary_text() == "10110");
    // bit 0 is the high bit of byte 0
    CHECK(b.bytes()[0] == 0b10110000);
}

TEST_CASE("from_bytes keeps byte order and hex round-trips") {
    const uint8_t data[] = {0xd4, 0x1d, 0x8c, 0xd9};
    BitString b = BitString::from_bytes(data);
    CHECK(b.size() == 32);
    CHECK(b.to_hex() == "d41d8cd9");
    CHECK(b.bit(0) == true);   // 0xd4 = 11010100
    CHECK(b.bit(5) == true);
    CHECK(b.bit(7) == false);
}

TEST_CASE("from_bytes with explicit bit count takes the leading bits") {
    const uint8_t data[] = {0xff, 0xe0};
    BitString b = BitString::from_bytes(data, 11);
    CHECK(b.size() == 11);
    CHECK(b.to_binary_text() == "11111111111");
}

TEST_CASE("push_back and append build the same string as text parsing") {
    BitString b;
    for (char c : std::string("110100111")) b.push_back(c == '1');
    CHECK(b == BitString::from_binary_text("110100111"));

    BitString left = BitString::from_binary_text("1101");
    left.append(BitString::from_binary_text("00111"));
    CHECK(left == BitString::from_binary_text("110100111"));
}

TEST_CASE("append is correct at byte boundaries and odd phases") {
    // Exhaustive-ish: all split points of a 24-bit pattern.
    BitString whole = BitString::from_binary_text("101100011010111100101001");
    for (size_t split = 0; split <= whole.size(); ++split) {
        BitString a = whole.slice(0, split);
        BitString b = whole.slice(split, whole.size() - split);
        a.append(b);
        CHECK(a == whole);
    }
}

TEST_CASE("append_uint and get_uint are big-endian inverses") {
    BitString b;
    b.append_uint(0x2A, 10);  // 0000101010
    CHECK(b.to_binary_text() == "0000101010");
    CHECK(b.get_uint(0, 10) == 0x2A);

    BitString c;
    c.append_uint(0xDEADBEEFCAFEBABEull, 64);
    CHECK(c.get_uint(0, 64) == 0xDEADBEEFCAFEBABEull);
    CHECK(c.get_uint(0, 8) == 0xDE);
    CHECK(c.get_uint(56, 8) == 0xBE);
    CHECK(c.get_uint(4, 8) == 0xEA);  // unaligned read
}

TEST_CASE("append_uint rejects values wider than the field") {
    BitString b;
    CHECK_THROWS_AS(b.append_uint(4, 2), std::invalid_argument);
    CHECK_NOTHROW(b.append_uint(3, 2));
}

TEST_CASE("slice extracts on arbitrary boundaries") {
    BitString b = BitString::from_binary_text("0110111000101");
    CHECK(b.slice(0, 4).to_binary_text() == "0110");
    CHECK(b.slice(4, 3).to_binary_text() == "111");
    CHECK(b.slice(7, 6).to_binary_text() == "000101");
    CHECK(b.slice(12, 1).to_binary_text() == "1");
    CHECK(b.slice(13, 0).size() == 0);
    CHECK_THROWS_AS(b.slice(7, 7), std::out_of_range);
}

TEST_CASE("set_bit flips exactly one position") {
    BitString b(16);
    b.set_bit(11, true);
    for (size_t i = 0; i < 16; ++i) CHECK(b.bit(i) == (i == 11));
    b.set_bit(11, false);
    CHECK(b == BitString(16));
}

TEST_CASE("equality includes width, not just bytes") {
    BitString a = BitString::from_binary_text("1010");
    BitString b = BitString::from_binary_text("10100");
    CHECK(a.bytes() == b.bytes());  // same packed image
    CHECK(a != b);                  // different widths
}

TEST_CASE("hamming distance") {
    BitString a = BitString::from_binary_text("10110010");
    BitString b = BitString::from_binary_text("10011010");
    CHECK(BitString::hamming_distance(a, a) == 0);
    CHECK(BitString::hamming_distance(a, b) == 2);
    CHECK_THROWS_AS(
        BitString::hamming_distance(a, BitString::from_binary_text("101")),
        std::invalid_argument);
}

TEST_CASE("final partial byte stays zero-padded after mutation") {
    BitString b = BitString::from_binary_text("111");
    CHECK(b.bytes()[0] == 0b11100000);
    b.push_back(true);
    b.push_back(true);
    CHECK(b.bytes()[0] == 0b11111000);
}

TEST_CASE("get_uint rejects out-of-range reads") {
    BitString b(20);
    CHECK_THROWS_AS(b.get_uint(16, 8), std::out_of_range);
    CHECK_THROWS_AS(b.get_uint(0, 65), std::invalid_argument);
}

TEST_CASE("to_hex requires whole bytes") {
    CHECK_THROWS_AS(BitString::from_binary_text("1010").to_hex(), std::invalid_argument);
}
