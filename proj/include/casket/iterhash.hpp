// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "casket/bitstring.hpp"

namespace casket {

/// A compression function mapping input_bits to output_bits. Deterministic;
/// output width is always output_bits.
struct CompressionFn {
    unsigned output_bits = 0;  // chaining-value width n
    unsigned input_bits = 0;   // total input width l
    std::function<BitString(const BitString&)> map;

    unsigned block_bits() const { return input_bits - output_bits; }
    BitString operator()(const BitString& input) const;
};

enum class PaddingRule {
    // Append a 1 bit, zeros to 64 bits short of a block boundary, then the
    // message bit length as a 64-bit little-endian (byte order) quantity.
    // Requires block widths over 64 bits; this is the MD5/SHA shape.
    md_strengthen_le64,
    // Append a 1 bit, zeros to the block boundary, then one whole extra
    // block holding the message bit length big-endian. Usable at toy
    // widths; unambiguous and suffix-free.
    length_block,
};

enum class OutputTransform {
    identity,
    base32,  // 5-bit groups over 0-9 A-V, MSB first, zero-padded tail
};

struct IteratedHashSpec {
    BitString iv;
    PaddingRule padding_rule = PaddingRule::length_block;
    OutputTransform output_transform = OutputTransform::identity;
};

/// Applies the padding rule; the result is a whole number of block_bits-wide
/// blocks. Message bit length must be below 2^block_bits for length_block
/// and below 2^64 for md_strengthen_le64.
BitString pad_message(PaddingRule rule, const BitString& msg, unsigned block_bits);

/// H_0 = IV, H_i = f(H_{i-1} || X_i), returns H_t. The spec's IV width must
/// equal f's output width. The output transform applies to the text form
/// only (see render_output); the returned bits are H_t itself.
BitString iterate(const IteratedHashSpec& spec, const CompressionFn& f,
                  const BitString& msg);

/// Text form of a hash result under the spec's output transform: identity
/// renders nothing extra (lowercase hex of the bits), base32 renders 5-bit
/// groups over the 0-9 A-V alphabet.
std::string render_output(OutputTransform g, const BitString& bits);

/// Number of compression-function invocations iterate() makes for msg,
/// i.e. the padded block count.
size_t chain_length(const IteratedHashSpec& spec, const CompressionFn& f,
                    const BitString& msg);

/// One stage of a strengthened-construction evaluation: the exact input fed
/// to f and the chaining value it produced.
struct ConstructionStage {
    BitString input;
    BitString output;
};

struct ConstructionTrace {
    std::vector<ConstructionStage> stages;
    BitString digest;  // output of the final stage
};

/// Damgard-Merkle strengthened construction over f : l -> n bits, l - n > 1.
/// Content is padded with a 1 bit and zeros to a whole number of
/// (l - n - 1)-bit payload blocks X_1..X_t, then
///   H_1 = f(0^{n+1} || X_1)
///   H_i = f(H_{i-1} || 1 || X_i)      i = 2..t
///   H_{t+1} = f(H_t || 1 || L)        L = message bit length, big-endian
/// and H_{t+1} is the result. Rejects f with l - n <= 1.
BitString md_construct(const CompressionFn& f, const BitString& msg);

/// Same evaluation with every stage recorded, for collision-witness checks.
ConstructionTrace md_construct_trace(const CompressionFn& f, const BitString& msg);

/// A fixed pseudo-random substitution table as a compression function:
/// input_bits-wide index into a table of output_bits-wide entries filled
/// from a seeded Prbg. input_bits is capped at 26 (table memory).
/// Collisions are abundant by construction, which is the point: the
/// strengthened-construction theorems are only testable at toy widths.
CompressionFn make_toy_compression(unsigned output_bits, unsigned input_bits,
                                   std::string_view table_seed);

/// MD5 expressed as a CompressionFn (128-bit chaining value || 512-bit
/// block, both as raw bytes in digest serialization order).
CompressionFn md5_compression_fn();

/// The spec that makes iterate() compute exactly RFC 1321 MD5.
IteratedHashSpec md5_iterated_spec();

}  // namespace casket
