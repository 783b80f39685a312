// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0
//
// casket: command-line front end over the store, naming, and probability
// modules.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 content address
// not found, 3 integrity failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casket/errors.hpp"
#include "casket/manifest.hpp"
#include "casket/montecarlo.hpp"
#include "casket/naming.hpp"
#include "casket/probability.hpp"
#include "casket/store.hpp"
#include "casket/tables.hpp"

namespace {

using namespace casket;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotFound = 2;
constexpr int kExitIntegrity = 3;

struct GlobalOptions {
    std::string store_root;
    std::string scheme_name;  // empty: stored scheme, or "m" for a new store
    std::string seed;
    std::optional<uint64_t> clock_ms;
    std::string format = "text";

    bool rows() const { return format == "rows"; }
};

/// Counts render without exponent when integral ("1048576"), scientific
/// otherwise, so machine-readable rows are diffable.
std::string format_count(double value) {
    char buf[40];
    if (value == std::floor(value) && std::abs(value) < 1e15)
        std::snprintf(buf, sizeof(buf), "%.0f", value);
    else
        std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

ClusterConfig resolve_cluster(const GlobalOptions& options) {
    if (options.store_root.empty())
        throw Error("--store (or CASKET_STORE) is required for store commands");
    std::optional<ClusterConfig> stored = Store::load_config(options.store_root);
    ClusterConfig config;
    if (stored) {
        config = *stored;
        if (!options.scheme_name.empty() &&
            scheme_from_name(options.scheme_name) != config.scheme)
            throw Error("store at " + options.store_root + " uses scheme '" +
                        std::string(scheme_prefix(config.scheme)) + "', not '" +
                        options.scheme_name + "'");
    } else {
        config.root_path = options.store_root;
        config.scheme =
            options.scheme_name.empty() ? NamingScheme::m : scheme_from_name(options.scheme_name);
    }
    config.root_path = options.store_root;
    if (!options.seed.empty()) config.test_seed = options.seed;
    config.frozen_clock_ms = options.clock_ms;
    return config;
}

/// Accepts a bare base32 CA or the scheme-prefixed form; a prefix must
/// match the store's scheme. Malformed text is a usage error, distinct
/// from a well-formed address the store does not hold.
std::string resolve_ca_text(const Store& store, std::string_view argument) {
    auto colon = argument.find(':');
    if (colon == std::string_view::npos)
        return ContentAddress::from_text(store.config().scheme, argument).text();
    ContentAddress ca = ContentAddress::parse_prefixed(argument);
    if (ca.scheme() != store.config().scheme)
        throw Error("address scheme '" + std::string(scheme_prefix(ca.scheme())) +
                    "' does not match the store scheme");
    return ca.text();
}

std::vector<uint8_t> read_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    if (in.bad()) throw Error("read of " + path + " failed");
    return data;
}

const char* health_name(ReplicaHealth health) {
    switch (health) {
        case ReplicaHealth::healthy: return "healthy";
        case ReplicaHealth::corrupt: return "corrupt";
        case ReplicaHealth::missing: return "missing";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

int cmd_put(const GlobalOptions& options, const std::string& path, const std::string& kind_name) {
    Store store(resolve_cluster(options));
    std::vector<uint8_t> content = read_input_file(path);
    ObjectKind kind = object_kind_from_name(kind_name);
    ContentAddress ca = store.write(content, kind);
    if (options.rows()) {
        std::cout << "ca,kind,size\n"
                  << ca.prefixed_text() << ',' << object_kind_name(kind) << ','
                  << content.size() << '\n';
    } else {
        std::cout << ca.prefixed_text() << '\n';
    }
    return kExitOk;
}

int cmd_get(const GlobalOptions& options, const std::string& ca_argument,
            const std::string& out_path) {
    Store store(resolve_cluster(options));
    std::string text = resolve_ca_text(store, ca_argument);
    std::vector<uint8_t> content = store.read(text);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + out_path);
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write to " + out_path + " failed");
    if (!options.rows())
        std::cout << "wrote " << content.size() << " bytes to " << out_path << '\n';
    return kExitOk;
}

int cmd_verify(const GlobalOptions& options, const std::string& ca_argument) {
    Store store(resolve_cluster(options));
    std::string text = resolve_ca_text(store, ca_argument);
    VerifyResult result = store.verify(text);
    if (options.rows()) {
        std::cout << "ca,replica,path,health\n";
        for (size_t i = 0; i < result.replicas.size(); ++i)
            std::cout << text << ',' << i << ',' << result.replicas[i].path << ','
                      << health_name(result.replicas[i].health) << '\n';
    } else {
        for (size_t i = 0; i < result.replicas.size(); ++i)
            std::cout << "replica " << i << " " << result.replicas[i].path << ": "
                      << health_name(result.replicas[i].health) << '\n';
    }
    return result.all_healthy ? kExitOk : kExitIntegrity;
}

int cmd_scrub(const GlobalOptions& options) {
    Store store(resolve_cluster(options));
    ScrubReport report = store.scrub();
    if (options.rows()) {
        std::cout << "objects_checked,corruptions_detected,repairs_made,unrecoverable\n"
                  << report.objects_checked << ',' << report.corruptions_detected.size() << ','
                  << report.repairs_made << ',' << report.unrecoverable.size() << '\n';
    } else {
        std::cout << "checked " << report.objects_checked << " replica images, "
                  << report.corruptions_detected.size() << " corruptions, "
                  << report.repairs_made << " repaired, " << report.unrecoverable.size()
                  << " unrecoverable\n";
        for (const auto& corruption : report.corruptions_detected)
            std::cout << "corrupt: " << corruption.ca_text << " replica "
                      << corruption.replica_index << " (" << corruption.path << ")\n";
        for (const auto& text : report.unrecoverable) std::cout << "unrecoverable: " << text << '\n';
    }
    return kExitOk;
}

int cmd_rebuild(const GlobalOptions& options) {
    if (options.store_root.empty())
        throw Error("--store (or CASKET_STORE) is required for store commands");
    Store::rebuild_manifest(options.store_root);
    Store store(resolve_cluster(options));
    const uint64_t objects = store.stats().object_count;
    if (options.rows())
        std::cout << "objects\n" << objects << '\n';
    else
        std::cout << "rebuilt manifest: " << objects << " objects\n";
    return kExitOk;
}

int cmd_stats(const GlobalOptions& options) {
    Store store(resolve_cluster(options));
    StoreStats stats = store.stats();
    if (options.rows()) {
        std::cout << "objects,bytes,blobs,clips,scheme,collision_probability,"
                     "collision_probability_pow2\n"
                  << stats.object_count << ',' << stats.total_bytes << ',' << stats.blob_count
                  << ',' << stats.clip_count << ',' << scheme_prefix(stats.scheme) << ','
                  << stats.collision.to_decimal() << ',' << stats.collision.to_pow2() << '\n';
    } else {
        std::cout << "objects: " << stats.object_count << " (" << stats.blob_count << " blobs, "
                  << stats.clip_count << " clips)\n"
                  << "bytes: " << stats.total_bytes << '\n'
                  << "scheme: " << scheme_prefix(stats.scheme) << '\n'
                  << "collision probability at this count: " << stats.collision.to_decimal()
                  << " (" << stats.collision.to_pow2() << ")\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

void print_probability_row(const GlobalOptions& options, const std::string& header,
                           const std::string& prefix, const Probability& p) {
    if (options.rows())
        std::cout << header << ",probability,probability_pow2\n"
                  << prefix << ',' << p.to_decimal() << ',' << p.to_pow2() << '\n';
    else
        std::cout << "probability " << p.to_decimal() << " (" << p.to_pow2() << ")\n";
}

int cmd_analyze_m(const GlobalOptions& options, double files) {
    print_probability_row(options, "files", format_count(files), m_collision(files));
    return kExitOk;
}

int cmd_analyze_mpp(const GlobalOptions& options, double files) {
    print_probability_row(options, "files", format_count(files), mpp_collision(files));
    return kExitOk;
}

int cmd_analyze_gm(const GlobalOptions& options, double access_nodes, double files_per_second,
                   double window_ms) {
    Probability p = gm_collision_over(access_nodes, files_per_second, window_ms);
    print_probability_row(options,
                          "access_nodes,files_per_second,window_ms",
                          format_count(access_nodes) + "," + format_count(files_per_second) +
                              "," + format_count(window_ms),
                          p);
    return kExitOk;
}

int cmd_analyze_birthday(const GlobalOptions& options, uint64_t q, double N, bool bound,
                         bool same_as_you) {
    Probability p = Probability::zero();
    std::string mode = "any-pair";
    if (bound) {
        mode = "bound";
        p = collision_bound(static_cast<double>(q), N);
    } else if (same_as_you) {
        mode = "same-as-you";
        p = same_birthday_as_you(static_cast<double>(q), N);
    } else {
        p = exact_birthday(q, N);
    }
    print_probability_row(options, "mode,q,N",
                          mode + "," + std::to_string(q) + "," + format_count(N), p);
    return kExitOk;
}

int cmd_analyze_montecarlo(const GlobalOptions& options, uint64_t q, uint64_t N, uint64_t trials,
                           const std::string& seed) {
    MonteCarloResult result = monte_carlo_birthday(q, N, trials, seed);
    Probability exact = exact_birthday(q, static_cast<double>(N));
    Probability bound = collision_bound(static_cast<double>(q), static_cast<double>(N));
    char estimate[32], error[32];
    std::snprintf(estimate, sizeof(estimate), "%.6f", result.estimate);
    std::snprintf(error, sizeof(error), "%.6f", result.std_error);
    if (options.rows()) {
        std::cout << "q,N,trials,collisions,estimate,std_error,exact,bound\n"
                  << q << ',' << N << ',' << trials << ',' << result.collisions << ','
                  << estimate << ',' << error << ',' << exact.to_decimal() << ','
                  << bound.to_decimal() << '\n';
    } else {
        std::cout << "estimate " << estimate << " +/- " << error << " over " << trials
                  << " trials (exact " << exact.to_decimal() << ", bound " << bound.to_decimal()
                  << ")\n";
    }
    return kExitOk;
}

int cmd_analyze_table1(const GlobalOptions& options) {
    std::cout << (options.rows() ? render_table1_csv() : render_table1_text());
    return kExitOk;
}

int cmd_analyze_table2(const GlobalOptions& options) {
    std::cout << (options.rows() ? render_table2_csv() : render_table2_text());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"content-addressed object store and collision-analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions options;
    app.add_option("--store", options.store_root, "store root directory")
        ->envname("CASKET_STORE");
    app.add_option("--scheme", options.scheme_name, "naming scheme: m, gm, or mpp")
        ->envname("CASKET_SCHEME")
        ->check(CLI::IsMember({"m", "gm", "mpp"}));
    app.add_option("--seed", options.seed, "deterministic test seed for access-node generators")
        ->envname("CASKET_SEED");
    app.add_option("--clock", options.clock_ms, "frozen clock in ms since the epoch")
        ->envname("CASKET_CLOCK");
    app.add_option("--format", options.format, "output format")
        ->envname("CASKET_FORMAT")
        ->check(CLI::IsMember({"text", "rows"}));

    // put
    auto* put = app.add_subcommand("put", "store a file, print its content address");
    std::string put_path;
    std::string put_kind = "blob";
    put->add_option("path", put_path, "file to store")->required();
    put->add_option("--kind", put_kind, "object kind")->check(CLI::IsMember({"blob", "clip"}));

    // get
    auto* get = app.add_subcommand("get", "read an object by content address");
    std::string get_ca, get_out;
    get->add_option("ca", get_ca, "content address (bare or scheme-prefixed)")->required();
    get->add_option("out", get_out, "output file path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "recompute hashes for one object's replicas");
    std::string verify_ca;
    verify->add_option("ca", verify_ca, "content address")->required();

    // scrub
    auto* scrub = app.add_subcommand("scrub", "verify and repair every replica in the store");

    // stats
    auto* stats = app.add_subcommand("stats", "object counts and live collision probability");

    // rebuild
    auto* rebuild = app.add_subcommand(
        "rebuild", "recover a lost manifest by scanning the replica images");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "collision and preimage calculators");
    analyze->require_subcommand(1);

    auto* analyze_m = analyze->add_subcommand("m", "128-bit scheme collision bound");
    double analyze_m_files = 0;
    analyze_m->add_option("-q,--files", analyze_m_files, "object count")->required();

    auto* analyze_gm = analyze->add_subcommand("gm", "random-extended scheme collision bound");
    double gm_nodes = 0, gm_rate = 0, gm_window = 1.0;
    analyze_gm->add_option("-A,--access-nodes", gm_nodes, "access node count")->required();
    analyze_gm->add_option("-S,--files-per-second", gm_rate, "write rate per node")->required();
    analyze_gm->add_option("-Z,--window-ms", gm_window, "operation window in ms (default 1)");

    auto* analyze_mpp = analyze->add_subcommand("mpp", "double-hash scheme collision bound");
    double analyze_mpp_files = 0;
    analyze_mpp->add_option("-q,--files", analyze_mpp_files, "object count")->required();

    auto* birthday = analyze->add_subcommand("birthday", "birthday-paradox calculators");
    uint64_t birthday_q = 0;
    double birthday_N = 0;
    bool birthday_any = false, birthday_bound = false, birthday_same = false;
    birthday->add_option("-q", birthday_q, "samples")->required();
    birthday->add_option("-N", birthday_N, "buckets")->required();
    auto* flag_any = birthday->add_flag("--any-pair", birthday_any, "exact any-pair probability");
    auto* flag_bound = birthday->add_flag("--bound", birthday_bound, "q(q-1)/2N upper bound");
    auto* flag_same =
        birthday->add_flag("--same-as-you", birthday_same, "one designated bucket");
    flag_any->excludes(flag_bound)->excludes(flag_same);
    flag_bound->excludes(flag_same);

    auto* montecarlo = analyze->add_subcommand("montecarlo", "empirical birthday simulation");
    uint64_t mc_q = 0, mc_N = 0, mc_trials = 10000;
    std::string mc_seed = "montecarlo";
    montecarlo->add_option("-q", mc_q, "samples per trial")->required();
    montecarlo->add_option("-N", mc_N, "buckets")->required();
    montecarlo->add_option("--trials", mc_trials, "trial count");
    montecarlo->add_option("--seed", mc_seed, "simulation seed");

    auto* table1 = analyze->add_subcommand("table1", "collision probability by fill rate");
    auto* table2 = analyze->add_subcommand("table2", "naming-scheme strength summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Fold CLI11's many parse-error codes into the documented contract:
        // anything that is not --help / --version is a usage error.
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (put->parsed()) return cmd_put(options, put_path, put_kind);
        if (get->parsed()) return cmd_get(options, get_ca, get_out);
        if (verify->parsed()) return cmd_verify(options, verify_ca);
        if (scrub->parsed()) return cmd_scrub(options);
        if (stats->parsed()) return cmd_stats(options);
        if (rebuild->parsed()) return cmd_rebuild(options);
        if (analyze->parsed()) {
            if (analyze_m->parsed()) return cmd_analyze_m(options, analyze_m_files);
            if (analyze_gm->parsed())
                return cmd_analyze_gm(options, gm_nodes, gm_rate, gm_window);
            if (analyze_mpp->parsed()) return cmd_analyze_mpp(options, analyze_mpp_files);
            if (birthday->parsed())
                return cmd_analyze_birthday(options, birthday_q, birthday_N, birthday_bound,
                                            birthday_same);
            if (montecarlo->parsed())
                return cmd_analyze_montecarlo(options, mc_q, mc_N, mc_trials, mc_seed);
            if (table1->parsed()) return cmd_analyze_table1(options);
            if (table2->parsed()) return cmd_analyze_table2(options);
        }
        std::cerr << "error: no command\n";
        return kExitUsage;
    } catch (const NotFoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNotFound;
    } catch (const IntegrityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
