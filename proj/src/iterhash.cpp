// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/iterhash.hpp"

#include <memory>
#include <stdexcept>

#include "casket/md5.hpp"
#include "casket/prbg.hpp"

namespace casket {

BitString CompressionFn::operator()(const BitString& input) const {
    if (input.size() != input_bits)
        throw std::invalid_argument("CompressionFn: input width mismatch");
    BitString out = map(input);
    if (out.size() != output_bits)
        throw std::logic_error("CompressionFn: map produced wrong output width");
    return out;
}

BitString pad_message(PaddingRule rule, const BitString& msg, unsigned block_bits) {
    if (block_bits == 0)
        throw std::invalid_argument("pad_message: zero block width");
    BitString padded = msg;
    switch (rule) {
        case PaddingRule::md_strengthen_le64: {
            if (block_bits <= 64)
                throw std::invalid_argument(
                    "pad_message: md_strengthen_le64 needs blocks over 64 bits");
            padded.push_back(true);
            while ((padded.size() + 64) % block_bits != 0)
                padded.push_back(false);
            const uint64_t len = msg.size();
            for (unsigned byte = 0; byte < 8; ++byte)
                padded.append_uint((len >> (8 * byte)) & 0xFF, 8);
            return padded;
        }
        case PaddingRule::length_block: {
            if (block_bits < 64 && msg.size() >= (uint64_t{1} << block_bits))
                throw std::invalid_argument(
                    "pad_message: message length does not fit the length block");
            padded.push_back(true);
            while (padded.size() % block_bits != 0)
                padded.push_back(false);
            if (block_bits <= 64) {
                padded.append_uint(msg.size(), block_bits);
            } else {
                BitString length_block(block_bits - 64);
                length_block.append_uint(msg.size(), 64);
                padded.append(length_block);
            }
            return padded;
        }
    }
    throw std::invalid_argument("pad_message: unknown rule");
}

BitString iterate(const IteratedHashSpec& spec, const CompressionFn& f,
                  const BitString& msg) {
    if (spec.iv.size() != f.output_bits)
        throw std::invalid_argument("iterate: IV width does not match f");
    const unsigned block_bits = f.block_bits();
    const BitString padded = pad_message(spec.padding_rule, msg, block_bits);

    BitString chain = spec.iv;
    for (size_t off = 0; off < padded.size(); off += block_bits) {
        BitString input = chain;
        input.append(padded.slice(off, block_bits));
        chain = f(input);
    }
    return chain;
}

size_t chain_length(const IteratedHashSpec& spec, const CompressionFn& f,
                    const BitString& msg) {
    return pad_message(spec.padding_rule, msg, f.block_bits()).size() / f.block_bits();
}

std::string render_output(OutputTransform g, const BitString& bits) {
    if (g == OutputTransform::identity) {
        if (bits.size() % 8 == 0)
            return bits.to_hex();
        return bits.to_binary_text();
    }
    static const char* alphabet = "0123456789ABCDEFGHIJKLMNOPQRSTUV";
    std::string out;
    const size_t nchars = (bits.size() + 4) / 5;
    out.reserve(nchars);
    for (size_t i = 0; i < nchars; ++i) {
        unsigned group = 0;
        for (size_t j = 0; j < 5; ++j) {
            const size_t idx = 5 * i + j;
            group = group << 1 | (idx < bits.size() && bits.bit(idx) ? 1u : 0u);
        }
        out.push_back(alphabet[group]);
    }
    return out;
}

BitString md_construct(const CompressionFn& f, const BitString& msg) {
    return md_construct_trace(f, msg).digest;
}

ConstructionTrace md_construct_trace(const CompressionFn& f, const BitString& msg) {
    if (f.input_bits <= f.output_bits + 1)
        throw std::invalid_argument("md_construct: requires l - n > 1");
    const unsigned n = f.output_bits;
    const unsigned payload_bits = f.input_bits - n - 1;
    if (payload_bits < 64 && msg.size() >= (uint64_t{1} << payload_bits))
        throw std::invalid_argument("md_construct: message too long for length stage");

    // Content padding: always append a 1 bit, then zeros to a payload
    // boundary. Unambiguity comes from the final length stage.
    BitString padded = msg;
    padded.push_back(true);
    while (padded.size() % payload_bits != 0)
        padded.push_back(false);

    ConstructionTrace trace;
    BitString chain;
    for (size_t off = 0; off < padded.size(); off += payload_bits) {
        BitString input;
        if (off == 0) {
            for (unsigned i = 0; i < n + 1; ++i)
                input.push_back(false);
        } else {
            input = chain;
            input.push_back(true);
        }
        input.append(padded.slice(off, payload_bits));
        chain = f(input);
        trace.stages.push_back({std::move(input), chain});
    }

    BitString length_stage = chain;
    length_stage.push_back(true);
    if (payload_bits <= 64) {
        length_stage.append_uint(msg.size(), payload_bits);
    } else {
        BitString len(payload_bits - 64);
        len.append_uint(msg.size(), 64);
        length_stage.append(len);
    }
    chain = f(length_stage);
    trace.stages.push_back({std::move(length_stage), chain});
    trace.digest = chain;
    return trace;
}

CompressionFn make_toy_compression(unsigned output_bits, unsigned input_bits,
                                   std::string_view table_seed) {
    if (input_bits > 26)
        throw std::invalid_argument("make_toy_compression: input width capped at 26");
    if (output_bits == 0 || output_bits > 32 || input_bits <= output_bits)
        throw std::invalid_argument("make_toy_compression: bad widths");

    const size_t entries = size_t{1} << input_bits;
    const unsigned entry_bytes = (output_bits + 7) / 8;
    auto table = std::make_shared<std::vector<uint8_t>>(entries * entry_bytes);
    Prbg gen(table_seed);
    for (auto& b : *table)
        b = gen.next_byte();

    CompressionFn f;
    f.output_bits = output_bits;
    f.input_bits = input_bits;
    f.map = [table, output_bits, input_bits, entry_bytes](const BitString& in) {
        const uint64_t idx = in.get_uint(0, input_bits);
        uint64_t v = 0;
        for (unsigned i = 0; i < entry_bytes; ++i)
            v = v << 8 | (*table)[idx * entry_bytes + i];
        v &= (output_bits == 64) ? ~uint64_t{0} : ((uint64_t{1} << output_bits) - 1);
        BitString out;
        out.append_uint(v, output_bits);
        return out;
    };
    return f;
}

CompressionFn md5_compression_fn() {
    CompressionFn f;
    f.output_bits = 128;
    f.input_bits = 640;
    f.map = [](const BitString& in) {
        std::array<uint8_t, 16> chain_bytes;
        const auto& bytes = in.bytes();
        std::copy_n(bytes.begin(), 16, chain_bytes.begin());
        MessageBlock512 block;
        std::copy_n(bytes.begin() + 16, 64, block.begin());
        const Md5State next = md5_compress(
            Md5State::deserialize(std::span<const uint8_t, 16>(chain_bytes)), block);
        return BitString::from_bytes(next.serialize());
    };
    return f;
}

IteratedHashSpec md5_iterated_spec() {
    IteratedHashSpec spec;
    spec.iv = BitString::from_bytes(Md5State{}.serialize());
    spec.padding_rule = PaddingRule::md_strengthen_le64;
    spec.output_transform = OutputTransform::identity;
    return spec;
}

}  // namespace casket
