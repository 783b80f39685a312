// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "casket/manifest.hpp"
#include "casket/naming.hpp"
#include "casket/probability.hpp"

namespace casket {

/// Shape of the simulated cluster. Access and storage nodes are in-process
/// roles: access nodes own GM counters and generators, storage nodes own
/// directories that hold replica images.
struct ClusterConfig {
    std::string root_path;
    NamingScheme scheme = NamingScheme::m;
    unsigned access_node_count = 4;    // 1..64
    unsigned storage_node_count = 4;   // >= replica_factor
    unsigned replica_factor = 2;       // >= 2
    /// Deterministic seeding for tests; production stores seed each access
    /// node from host entropy.
    std::optional<std::string> test_seed;
    /// Frozen millisecond clock for tests; production uses the system clock.
    std::optional<uint64_t> frozen_clock_ms;

    void validate() const;
};

enum class ReplicaHealth { healthy, corrupt, missing };

struct ReplicaStatus {
    std::string path;  // store-root relative
    ReplicaHealth health = ReplicaHealth::healthy;
};

struct VerifyResult {
    std::vector<ReplicaStatus> replicas;
    bool all_healthy = true;
};

struct Corruption {
    std::string ca_text;
    unsigned replica_index = 0;
    std::string path;
};

struct ScrubReport {
    uint64_t objects_checked = 0;  ///< replica images visited
    std::vector<Corruption> corruptions_detected;
    uint64_t repairs_made = 0;
    std::vector<std::string> unrecoverable;  ///< CA texts with no healthy replica
};

struct StoreStats {
    uint64_t object_count = 0;
    uint64_t total_bytes = 0;
    uint64_t blob_count = 0;
    uint64_t clip_count = 0;
    NamingScheme scheme = NamingScheme::m;
    /// Collision probability for the live object count under the store's
    /// scheme (zero for GM, whose addresses are not content-unique, and for
    /// counts below 2).
    Probability collision;
};

/// A local content-addressed object store. Writing routes round-robin
/// across access-node contexts, persists replica_factor copies on distinct
/// storage nodes, and records the object in an append-only manifest; the
/// content address doubles as the manipulation-detection code for reads and
/// scrubs. Under M and M++ the store is single-instance (identical content
/// dedupes to one object); under GM every write is a new object.
class Store {
  public:
    /// Opens the store at config.root_path, initializing it on first use.
    /// On reopen the persisted shape wins and the requested scheme must
    /// match the stored one. GM access-node state (counter and generator
    /// position) is persisted so a reopened store continues each node's
    /// stream instead of replaying it.
    explicit Store(const ClusterConfig& config);
    ~Store();
    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    /// Reads the persisted shape of an existing store (scheme and node
    /// counts) so callers can apply runtime options on top.
    static std::optional<ClusterConfig> load_config(const std::string& root_path);

    /// True when root_path already holds a store.
    static bool exists(const std::string& root_path);

    ContentAddress write(std::span<const uint8_t> content, ObjectKind kind);
    std::vector<uint8_t> read(const ContentAddress& ca);
    std::vector<uint8_t> read(std::string_view ca_text);

    /// Recomputes content-hash fields for every replica of one object.
    VerifyResult verify(std::string_view ca_text);

    /// Visits every replica of every object, detects corrupt or missing
    /// images, and rewrites them from a verified replica. Objects with no
    /// verifiable replica are reported unrecoverable and left in place.
    ScrubReport scrub();

    /// Fault injection: XORs one byte of one on-disk replica image.
    /// Metadata and other replicas are untouched; mask 0 is a no-op.
    void corrupt(std::string_view ca_text, unsigned replica_index, uint64_t byte_offset,
                 uint8_t xor_mask);

    StoreStats stats() const;

    const ClusterConfig& config() const { return config_; }
    std::optional<ManifestRecord> lookup(std::string_view ca_text) const;

    /// Recovery path for a lost manifest: scans the storage-node
    /// directories and rewrites the log from the replica images found.
    /// Object kind is not recoverable from the layout and defaults to blob.
    static void rebuild_manifest(const std::string& root_path);

  private:
    struct ObjectEntry {
        explicit ObjectEntry(ManifestRecord r) : record(std::move(r)) {}
        ManifestRecord record;
        std::mutex repair_lock;
        std::set<unsigned> flagged;  // replicas queued for scrub repair
    };

    struct AccessNode {
        std::unique_ptr<AccessNodeContext> context;
        std::mutex lock;
    };

    std::string absolute(const std::string& relative_path) const;
    std::string replica_relative_path(unsigned storage_node, const std::string& ca_text) const;
    void persist_replicas(const ManifestRecord& record, std::span<const uint8_t> content) const;
    ObjectEntry& entry_for(std::string_view ca_text);
    const ObjectEntry* find_entry(std::string_view ca_text) const;
    void register_object(ManifestRecord record);
    void init_access_nodes();
    void save_node_state();

    ClusterConfig config_;
    std::unique_ptr<ManifestLog> log_;
    mutable std::shared_mutex objects_mutex_;
    std::deque<ObjectEntry> objects_;
    std::unordered_map<std::string, ObjectEntry*> by_text_;
    std::vector<std::unique_ptr<AccessNode>> access_nodes_;
    std::atomic<uint64_t> next_access_node_{0};
    std::mutex manifest_mutex_;
    std::mutex state_mutex_;
};

}  // namespace casket
