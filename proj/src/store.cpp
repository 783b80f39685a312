// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "casket/errors.hpp"
#include "casket/sha256.hpp"

namespace fs = std::filesystem;

namespace casket {

namespace {

constexpr const char* kConfigFile = "config";
constexpr const char* kManifestFile = "manifest.log";
constexpr const char* kNodeStateFile = "nodes.state";

std::string storage_node_dir(unsigned node) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "sn%02u", node);
    return buf;
}

std::optional<std::vector<uint8_t>> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    if (in.bad()) return std::nullopt;
    return data;
}

/// Writes via a private temp file, fsyncs, then renames into place so a
/// crash can never leave a half-written image at the final path.
void write_file_durable(const fs::path& path, std::span<const uint8_t> content) {
    static std::atomic<uint64_t> temp_serial{0};
    fs::create_directories(path.parent_path());
    fs::path temp = path;
    temp += ".tmp" + std::to_string(::getpid()) + "." + std::to_string(temp_serial++);
    int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0)
        throw Error("cannot create " + temp.string() + ": " + std::strerror(errno));
    size_t written = 0;
    while (written < content.size()) {
        ssize_t n = ::write(fd, content.data() + written, content.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            int err = errno;
            ::close(fd);
            ::unlink(temp.c_str());
            throw Error("write to " + temp.string() + " failed: " + std::strerror(err));
        }
        written += static_cast<size_t>(n);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) {
        ::unlink(temp.c_str());
        throw Error("flush of " + temp.string() + " failed: " + std::strerror(errno));
    }
    std::error_code ec;
    fs::rename(temp, path, ec);
    if (ec) {
        ::unlink(temp.c_str());
        throw Error("rename to " + path.string() + " failed: " + ec.message());
    }
}

Prbg make_node_generator(const std::optional<std::string>& test_seed, uint32_t node_id) {
    if (!test_seed) return Prbg::from_entropy();
    // Distinct deterministic stream per node: hash the seed with the id.
    std::vector<uint8_t> material(test_seed->begin(), test_seed->end());
    for (int i = 3; i >= 0; --i) material.push_back(static_cast<uint8_t>(node_id >> (8 * i)));
    Digest256 digest = sha256(material);
    return Prbg(std::span<const uint8_t>(digest.bytes.data(), digest.bytes.size()));
}

}  // namespace

void ClusterConfig::validate() const {
    if (root_path.empty()) throw Error("cluster config: root_path is required");
    if (access_node_count < 1 || access_node_count > 64)
        throw Error("cluster config: access_node_count must be in 1..64");
    if (replica_factor < 2) throw Error("cluster config: replica_factor must be >= 2");
    if (replica_factor > 255) throw Error("cluster config: replica_factor must be <= 255");
    if (storage_node_count < replica_factor)
        throw Error("cluster config: storage_node_count must be >= replica_factor");
    if (storage_node_count > 256) throw Error("cluster config: storage_node_count must be <= 256");
}

bool Store::exists(const std::string& root_path) {
    return fs::exists(fs::path(root_path) / kConfigFile);
}

std::optional<ClusterConfig> Store::load_config(const std::string& root_path) {
    std::ifstream in(fs::path(root_path) / kConfigFile);
    if (!in) return std::nullopt;
    ClusterConfig config;
    config.root_path = root_path;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "scheme")
            config.scheme = scheme_from_name(value);
        else if (key == "access_node_count")
            config.access_node_count = static_cast<unsigned>(std::stoul(value));
        else if (key == "storage_node_count")
            config.storage_node_count = static_cast<unsigned>(std::stoul(value));
        else if (key == "replica_factor")
            config.replica_factor = static_cast<unsigned>(std::stoul(value));
        else
            throw Error("store config: unknown key '" + key + "'");
    }
    return config;
}

Store::Store(const ClusterConfig& config) : config_(config) {
    config_.validate();
    fs::path root(config_.root_path);

    if (auto stored = load_config(config_.root_path)) {
        if (stored->scheme != config_.scheme)
            throw Error("store at " + config_.root_path + " uses scheme '" +
                        std::string(scheme_prefix(stored->scheme)) + "', not '" +
                        std::string(scheme_prefix(config_.scheme)) + "'");
        config_.access_node_count = stored->access_node_count;
        config_.storage_node_count = stored->storage_node_count;
        config_.replica_factor = stored->replica_factor;
    } else {
        fs::create_directories(root);
        std::ostringstream text;
        text << "scheme=" << scheme_prefix(config_.scheme) << '\n'
             << "access_node_count=" << config_.access_node_count << '\n'
             << "storage_node_count=" << config_.storage_node_count << '\n'
             << "replica_factor=" << config_.replica_factor << '\n';
        std::string body = text.str();
        write_file_durable(root / kConfigFile,
                           {reinterpret_cast<const uint8_t*>(body.data()), body.size()});
    }

    init_access_nodes();

    fs::path manifest_path = root / kManifestFile;
    ManifestLoad load = load_manifest(manifest_path.string());
    if (load.truncated_tail) fs::resize_file(manifest_path, load.clean_bytes);
    for (auto& record : load.records) register_object(std::move(record));
    log_ = std::make_unique<ManifestLog>(manifest_path.string());
}

Store::~Store() {
    try {
        save_node_state();
    } catch (...) {
        // Destructor: the next open falls back to fresh node state.
    }
}

/// Builds the per-node contexts, resuming counter values and (for seeded
/// stores) generator stream positions recorded by the last session. A node
/// whose stream position replayed would re-emit earlier G draws, which is
/// exactly the GM-uniqueness failure the state file exists to prevent.
void Store::init_access_nodes() {
    struct NodeState {
        uint16_t counter;
        uint64_t bits;
    };
    std::unordered_map<uint32_t, NodeState> saved;
    uint64_t route = 0;
    std::ifstream in(fs::path(config_.root_path) / kNodeStateFile);
    std::string word;
    while (in >> word) {
        if (word == "route") {
            in >> route;
        } else if (word == "node") {
            uint32_t id;
            NodeState state{};
            if (in >> id >> state.counter >> state.bits) saved.emplace(id, state);
        }
    }

    for (uint32_t i = 0; i < config_.access_node_count; ++i) {
        auto node = std::make_unique<AccessNode>();
        MsClock clock = config_.frozen_clock_ms ? frozen_ms_clock(*config_.frozen_clock_ms)
                                                : system_ms_clock();
        Prbg generator = make_node_generator(config_.test_seed, i);
        auto it = saved.find(i);
        if (it != saved.end()) {
            // Entropy-seeded generators are fresh streams each session, so
            // only deterministic ones resume a position.
            if (config_.test_seed) generator.seek(it->second.bits);
            node->context = std::make_unique<AccessNodeContext>(
                i, std::move(generator), std::move(clock), it->second.counter);
        } else {
            node->context =
                std::make_unique<AccessNodeContext>(i, std::move(generator), std::move(clock));
        }
        access_nodes_.push_back(std::move(node));
    }
    next_access_node_ = route;
}

void Store::save_node_state() {
    std::lock_guard guard(state_mutex_);
    std::ostringstream text;
    text << "route " << next_access_node_ % access_nodes_.size() << '\n';
    for (auto& node : access_nodes_) {
        std::lock_guard node_guard(node->lock);
        text << "node " << node->context->node_id() << ' ' << node->context->counter() << ' '
             << node->context->generator_bits_consumed() << '\n';
    }
    std::string body = text.str();
    write_file_durable(fs::path(config_.root_path) / kNodeStateFile,
                       {reinterpret_cast<const uint8_t*>(body.data()), body.size()});
}

std::string Store::absolute(const std::string& relative_path) const {
    return (fs::path(config_.root_path) / relative_path).string();
}

std::string Store::replica_relative_path(unsigned storage_node,
                                         const std::string& ca_text) const {
    return storage_node_dir(storage_node) + "/" + ca_text.substr(0, 2) + "/" + ca_text;
}

void Store::register_object(ManifestRecord record) {
    std::string text = record.ca.text();
    ObjectEntry& entry = objects_.emplace_back(std::move(record));
    by_text_.emplace(std::move(text), &entry);
}

Store::ObjectEntry& Store::entry_for(std::string_view ca_text) {
    std::shared_lock lock(objects_mutex_);
    auto it = by_text_.find(std::string(ca_text));
    if (it == by_text_.end())
        throw NotFoundError("unknown content address: " + std::string(ca_text));
    return *it->second;
}

const Store::ObjectEntry* Store::find_entry(std::string_view ca_text) const {
    std::shared_lock lock(objects_mutex_);
    auto it = by_text_.find(std::string(ca_text));
    return it == by_text_.end() ? nullptr : it->second;
}

void Store::persist_replicas(const ManifestRecord& record,
                             std::span<const uint8_t> content) const {
    for (const auto& path : record.replica_paths) write_file_durable(absolute(path), content);
}

ContentAddress Store::write(std::span<const uint8_t> content, ObjectKind kind) {
    if (content.size() > kMaxContentBytes)
        throw OversizeError("content exceeds the 100 MB ceiling");

    std::optional<ContentAddress> ca;
    switch (config_.scheme) {
        case NamingScheme::m:
            ca = compute_m(content);
            break;
        case NamingScheme::mpp:
            ca = compute_mpp(content);
            break;
        case NamingScheme::gm: {
            AccessNode& node =
                *access_nodes_[next_access_node_++ % access_nodes_.size()];
            {
                std::lock_guard guard(node.lock);
                ca = compute_gm(content, *node.context).first;
            }
            save_node_state();
            break;
        }
    }
    std::string text = ca->text();

    bool single_instance = config_.scheme != NamingScheme::gm;
    if (single_instance) {
        std::shared_lock lock(objects_mutex_);
        auto it = by_text_.find(text);
        if (it != by_text_.end()) return it->second->record.ca;
    }

    ManifestRecord record{*ca, kind, content.size(), {}};
    unsigned start =
        static_cast<unsigned>(std::hash<std::string>{}(text) % config_.storage_node_count);
    record.replica_paths.reserve(config_.replica_factor);
    for (unsigned r = 0; r < config_.replica_factor; ++r)
        record.replica_paths.push_back(
            replica_relative_path((start + r) % config_.storage_node_count, text));

    persist_replicas(record, content);

    // The check-append-register step is one critical section so a racing
    // duplicate write can never log two records for one address.
    std::lock_guard manifest_guard(manifest_mutex_);
    {
        std::shared_lock lock(objects_mutex_);
        auto it = by_text_.find(text);
        if (it != by_text_.end()) {
            if (single_instance) return it->second->record.ca;
            // A GM address must be fresh on every write; a repeat means the
            // node state was replayed (or a 2^-70 event occurred).
            throw Error("duplicate address generated for " + text +
                        "; access-node state was reused");
        }
    }
    log_->append(record);
    std::unique_lock lock(objects_mutex_);
    register_object(std::move(record));
    return *ca;
}

std::vector<uint8_t> Store::read(const ContentAddress& ca) { return read(ca.text()); }

std::vector<uint8_t> Store::read(std::string_view ca_text) {
    ObjectEntry& entry = entry_for(ca_text);
    const ManifestRecord& record = entry.record;
    for (unsigned i = 0; i < record.replica_paths.size(); ++i) {
        auto bytes = read_file(absolute(record.replica_paths[i]));
        if (bytes && bytes->size() == record.size && content_fields_match(record.ca, *bytes))
            return std::move(*bytes);
        std::lock_guard guard(entry.repair_lock);
        entry.flagged.insert(i);
    }
    throw IntegrityError("all replicas failed verification for " + std::string(ca_text));
}

VerifyResult Store::verify(std::string_view ca_text) {
    ObjectEntry& entry = entry_for(ca_text);
    const ManifestRecord& record = entry.record;
    VerifyResult result;
    for (unsigned i = 0; i < record.replica_paths.size(); ++i) {
        ReplicaStatus status{record.replica_paths[i], ReplicaHealth::healthy};
        auto bytes = read_file(absolute(record.replica_paths[i]));
        if (!bytes) {
            status.health = ReplicaHealth::missing;
        } else if (bytes->size() != record.size || !content_fields_match(record.ca, *bytes)) {
            status.health = ReplicaHealth::corrupt;
        }
        if (status.health != ReplicaHealth::healthy) {
            result.all_healthy = false;
            std::lock_guard guard(entry.repair_lock);
            entry.flagged.insert(i);
        }
        result.replicas.push_back(std::move(status));
    }
    return result;
}

ScrubReport Store::scrub() {
    std::vector<ObjectEntry*> entries;
    {
        std::shared_lock lock(objects_mutex_);
        entries.reserve(objects_.size());
        for (ObjectEntry& entry : objects_) entries.push_back(&entry);
    }

    ScrubReport report;
    for (ObjectEntry* entry : entries) {
        std::lock_guard repair(entry->repair_lock);
        const ManifestRecord& record = entry->record;
        std::string text = record.ca.text();
        std::optional<std::vector<uint8_t>> verified;
        std::vector<unsigned> bad;
        for (unsigned i = 0; i < record.replica_paths.size(); ++i) {
            ++report.objects_checked;
            auto bytes = read_file(absolute(record.replica_paths[i]));
            if (bytes && bytes->size() == record.size &&
                content_fields_match(record.ca, *bytes)) {
                if (!verified) verified = std::move(bytes);
            } else {
                bad.push_back(i);
                report.corruptions_detected.push_back({text, i, record.replica_paths[i]});
            }
        }
        if (bad.empty()) {
            entry->flagged.clear();
            continue;
        }
        if (!verified) {
            report.unrecoverable.push_back(text);
            continue;  // leave the images in place for forensics
        }
        for (unsigned i : bad) {
            write_file_durable(absolute(record.replica_paths[i]), *verified);
            ++report.repairs_made;
        }
        entry->flagged.clear();
    }
    return report;
}

void Store::corrupt(std::string_view ca_text, unsigned replica_index, uint64_t byte_offset,
                    uint8_t xor_mask) {
    ObjectEntry& entry = entry_for(ca_text);
    const ManifestRecord& record = entry.record;
    if (replica_index >= record.replica_paths.size())
        throw Error("corrupt: replica index out of range");
    if (byte_offset >= record.size) throw Error("corrupt: byte offset out of range");
    std::fstream file(absolute(record.replica_paths[replica_index]),
                      std::ios::binary | std::ios::in | std::ios::out);
    if (!file) throw Error("corrupt: cannot open replica image");
    file.seekg(static_cast<std::streamoff>(byte_offset));
    char byte = 0;
    file.get(byte);
    file.seekp(static_cast<std::streamoff>(byte_offset));
    file.put(static_cast<char>(static_cast<uint8_t>(byte) ^ xor_mask));
    file.flush();
    if (!file) throw Error("corrupt: replica image write failed");
}

StoreStats Store::stats() const {
    StoreStats stats;
    stats.scheme = config_.scheme;
    std::shared_lock lock(objects_mutex_);
    stats.object_count = objects_.size();
    for (const ObjectEntry& entry : objects_) {
        stats.total_bytes += entry.record.size;
        if (entry.record.kind == ObjectKind::blob)
            ++stats.blob_count;
        else
            ++stats.clip_count;
    }
    if (stats.object_count >= 2) {
        double count = static_cast<double>(stats.object_count);
        if (config_.scheme == NamingScheme::m)
            stats.collision = m_collision(count);
        else if (config_.scheme == NamingScheme::mpp)
            stats.collision = mpp_collision(count);
        // GM addresses embed 70 random bits per write; address collisions
        // are not a function of object count, so none is reported.
    }
    return stats;
}

std::optional<ManifestRecord> Store::lookup(std::string_view ca_text) const {
    const ObjectEntry* entry = find_entry(ca_text);
    if (!entry) return std::nullopt;
    return entry->record;
}

void Store::rebuild_manifest(const std::string& root_path) {
    auto config = load_config(root_path);
    if (!config) throw Error("no store at " + root_path);
    fs::path root(root_path);

    std::map<std::string, std::vector<std::string>> found;  // text -> relative paths
    for (unsigned node = 0; node < config->storage_node_count; ++node) {
        fs::path node_dir = root / storage_node_dir(node);
        if (!fs::is_directory(node_dir)) continue;
        for (const auto& bucket : fs::directory_iterator(node_dir)) {
            if (!bucket.is_directory()) continue;
            for (const auto& image : fs::directory_iterator(bucket.path())) {
                if (!image.is_regular_file()) continue;
                std::string name = image.path().filename().string();
                try {
                    ContentAddress::from_text(config->scheme, name);
                } catch (const std::invalid_argument&) {
                    continue;  // temp files and foreign debris
                }
                found[name].push_back(storage_node_dir(node) + "/" +
                                      bucket.path().filename().string() + "/" + name);
            }
        }
    }

    fs::path manifest_path = root / kManifestFile;
    fs::remove(manifest_path);
    ManifestLog log(manifest_path.string());
    for (auto& [text, paths] : found) {
        std::sort(paths.begin(), paths.end());
        uint64_t size = fs::file_size(root / paths.front());
        // Kind is not encoded in the layout; rebuilt records default to blob.
        ManifestRecord record{ContentAddress::from_text(config->scheme, text),
                              ObjectKind::blob, size, std::move(paths)};
        log.append(record);
    }
}

}  // namespace casket
