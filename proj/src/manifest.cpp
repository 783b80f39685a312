// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/manifest.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "casket/errors.hpp"

namespace casket {

namespace {

// A record holds at most a CA plus replica paths; 1 MB of payload is
// already pathological, so anything larger is treated as log corruption
// rather than allocated.
constexpr uint32_t kMaxPayloadBytes = 1 << 20;

void put_u16le(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32le(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64le(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t crc_of(const uint8_t* data, size_t len) {
    return static_cast<uint32_t>(::crc32(0L, data, static_cast<uInt>(len)));
}

/// Bounds-checked little-endian cursor over one payload.
class Cursor {
  public:
    Cursor(const uint8_t* data, size_t len) : data_(data), len_(len) {}

    bool done() const { return pos_ == len_; }

    uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    uint16_t u16() {
        need(2);
        uint16_t v = static_cast<uint16_t>(data_[pos_] | data_[pos_ + 1] << 8);
        pos_ += 2;
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }
    const uint8_t* raw(size_t n) {
        need(n);
        const uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }

  private:
    void need(size_t n) {
        if (len_ - pos_ < n) throw std::out_of_range("manifest payload underrun");
    }
    const uint8_t* data_;
    size_t len_;
    size_t pos_ = 0;
};

ManifestRecord decode_payload(const uint8_t* data, size_t len) {
    Cursor in(data, len);
    uint8_t scheme_byte = in.u8();
    if (scheme_byte < 1 || scheme_byte > 3) throw std::out_of_range("bad scheme byte");
    auto scheme = static_cast<NamingScheme>(scheme_byte);
    uint8_t kind_byte = in.u8();
    if (kind_byte > 1) throw std::out_of_range("bad kind byte");
    uint16_t ca_bits = in.u16();
    if (ca_bits != scheme_bits(scheme)) throw std::out_of_range("ca width/scheme mismatch");
    const uint8_t* ca_bytes = in.raw(ca_bits / 8);
    ManifestRecord record{
        ContentAddress(scheme, BitString::from_bytes({ca_bytes, ca_bits / 8u})),
        static_cast<ObjectKind>(kind_byte), in.u64(), {}};
    uint8_t replica_count = in.u8();
    record.replica_paths.reserve(replica_count);
    for (unsigned i = 0; i < replica_count; ++i) {
        uint16_t path_len = in.u16();
        const uint8_t* path = in.raw(path_len);
        record.replica_paths.emplace_back(reinterpret_cast<const char*>(path), path_len);
    }
    if (!in.done()) throw std::out_of_range("trailing payload bytes");
    return record;
}

}  // namespace

ObjectKind object_kind_from_name(std::string_view name) {
    if (name == "blob") return ObjectKind::blob;
    if (name == "clip") return ObjectKind::clip;
    throw std::invalid_argument("unknown object kind: " + std::string(name));
}

std::string_view object_kind_name(ObjectKind kind) {
    return kind == ObjectKind::blob ? "blob" : "clip";
}

std::vector<uint8_t> encode_manifest_record(const ManifestRecord& record) {
    if (record.replica_paths.size() > 255) throw Error("manifest record: too many replicas");
    std::vector<uint8_t> payload;
    payload.push_back(static_cast<uint8_t>(record.ca.scheme()));
    payload.push_back(static_cast<uint8_t>(record.kind));
    put_u16le(payload, static_cast<uint16_t>(record.ca.bits().size()));
    const auto& ca_bytes = record.ca.bits().bytes();
    payload.insert(payload.end(), ca_bytes.begin(), ca_bytes.end());
    put_u64le(payload, record.size);
    payload.push_back(static_cast<uint8_t>(record.replica_paths.size()));
    for (const auto& path : record.replica_paths) {
        if (path.size() > 0xFFFF) throw Error("manifest record: replica path too long");
        put_u16le(payload, static_cast<uint16_t>(path.size()));
        payload.insert(payload.end(), path.begin(), path.end());
    }

    std::vector<uint8_t> out;
    out.reserve(payload.size() + 8);
    put_u32le(out, static_cast<uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    put_u32le(out, crc_of(payload.data(), payload.size()));
    return out;
}

ManifestLoad load_manifest(const std::string& path) {
    ManifestLoad load;
    std::ifstream in(path, std::ios::binary);
    if (!in) return load;  // no log yet
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());

    size_t pos = 0;
    while (data.size() - pos >= 8) {
        uint32_t len = 0;
        for (int i = 0; i < 4; ++i) len |= static_cast<uint32_t>(data[pos + i]) << (8 * i);
        if (len > kMaxPayloadBytes || data.size() - pos < 8 + static_cast<size_t>(len)) break;
        const uint8_t* payload = data.data() + pos + 4;
        uint32_t stored_crc = 0;
        for (int i = 0; i < 4; ++i)
            stored_crc |= static_cast<uint32_t>(data[pos + 4 + len + i]) << (8 * i);
        if (crc_of(payload, len) != stored_crc) break;
        try {
            load.records.push_back(decode_payload(payload, len));
        } catch (const std::out_of_range&) {
            break;  // framing intact but payload malformed: treat as corrupt tail
        }
        pos += 8 + len;
    }
    load.clean_bytes = pos;
    load.truncated_tail = pos != data.size();
    return load;
}

ManifestLog::ManifestLog(const std::string& path) {
    fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd_ < 0) throw Error("cannot open manifest log " + path + ": " + std::strerror(errno));
}

ManifestLog::~ManifestLog() {
    if (fd_ >= 0) ::close(fd_);
}

void ManifestLog::append(const ManifestRecord& record) {
    std::vector<uint8_t> image = encode_manifest_record(record);
    size_t written = 0;
    while (written < image.size()) {
        ssize_t n = ::write(fd_, image.data() + written, image.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw Error(std::string("manifest append failed: ") + std::strerror(errno));
        }
        written += static_cast<size_t>(n);
    }
    if (::fsync(fd_) != 0)
        throw Error(std::string("manifest fsync failed: ") + std::strerror(errno));
}

}  // namespace casket
