// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "casket/naming.hpp"

namespace casket {

enum class ObjectKind : uint8_t {
    blob = 0,  ///< application data object
    clip = 1,  ///< metadata container (opaque payload here)
};

ObjectKind object_kind_from_name(std::string_view name);
std::string_view object_kind_name(ObjectKind kind);

/// One append-only log record describing a stored object. Replica paths are
/// relative to the store root so a store directory can be relocated.
struct ManifestRecord {
    ContentAddress ca;
    ObjectKind kind = ObjectKind::blob;
    uint64_t size = 0;
    std::vector<std::string> replica_paths;
};

/// Binary image of one record:
///   u32le payload_length | payload | u32le crc32(payload)
/// payload:
///   u8 scheme | u8 kind | u16le ca_bits | ca bytes | u64le size |
///   u8 replica_count | repeated (u16le path_length | path bytes)
std::vector<uint8_t> encode_manifest_record(const ManifestRecord& record);

struct ManifestLoad {
    std::vector<ManifestRecord> records;
    uint64_t clean_bytes = 0;    ///< log prefix covered by valid records
    bool truncated_tail = false; ///< trailing bytes were partial or corrupt
};

/// Reads records until the log ends or a record fails its length or
/// checksum framing; everything after the last valid record is reported as
/// a truncated tail (the expected shape after a crash mid-append). A
/// missing file loads as an empty log.
ManifestLoad load_manifest(const std::string& path);

/// Appender with fsync-per-record durability.
class ManifestLog {
  public:
    explicit ManifestLog(const std::string& path);
    ~ManifestLog();
    ManifestLog(const ManifestLog&) = delete;
    ManifestLog& operator=(const ManifestLog&) = delete;

    void append(const ManifestRecord& record);

  private:
    int fd_ = -1;
};

}  // namespace casket
