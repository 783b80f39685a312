// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#include "casket/tables.hpp"

#include <cstdio>
#include <sstream>

namespace casket {

namespace {

struct Table1Seed {
    double objects;
    const char* capacity_10_byte;
    const char* capacity_1_kb;
};

constexpr Table1Seed kTable1Seeds[] = {
    {1e6, "10 Megabyte", "1 Gigabyte"},
    {1e7, "100 Megabyte", "10 Gigabyte"},
    {1e8, "1 Gigabyte", "100 Gigabyte"},
    {1e9, "10 Gigabyte", "1 Terabyte"},
    {1e10, "100 Gigabyte", "10 Terabyte"},
    {1e11, "1 Terabyte", "100 Terabyte"},
    {1e12, "10 Terabyte", "1 Petabyte"},
    {1e13, "100 Terabyte", "10 Petabyte"},
    {1e14, "1 Petabyte", "100 Petabyte"},
    {1e15, "10 Petabyte", "1 Exabyte"},
};

std::string objects_label(double objects) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%.0e", objects);
    return buf;
}

}  // namespace

std::vector<Table1Row> table1_rows() {
    std::vector<Table1Row> rows;
    rows.reserve(std::size(kTable1Seeds));
    for (const auto& seed : kTable1Seeds) {
        rows.push_back({seed.objects, objects_label(seed.objects), seed.capacity_10_byte,
                        seed.capacity_1_kb, m_collision(seed.objects)});
    }
    return rows;
}

std::vector<Table2Row> table2_rows() {
    return {
        {"M", "2^64 files stored", "O(1)", "O(2^108)"},
        {"GM", "Not possible", "Not possible", "Not possible"},
        {"M++", "2^124 files stored", "O(2^67)", "2^119"},
    };
}

std::string render_table1_text() {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s  %-22s  %-22s  %-14s  %s\n", "Objects",
                  "Capacity (10 B avg)", "Capacity (1 KB avg)", "Collision", "Collision (pow2)");
    out << line;
    for (const auto& row : table1_rows()) {
        std::snprintf(line, sizeof(line), "%-10s  %-22s  %-22s  %-14s  %s\n",
                      row.objects_label.c_str(), row.capacity_10_byte.c_str(),
                      row.capacity_1_kb.c_str(), row.collision.to_decimal().c_str(),
                      row.collision.to_pow2().c_str());
        out << line;
    }
    return out.str();
}

std::string render_table2_text() {
    std::ostringstream out;
    char line[200];
    std::snprintf(line, sizeof(line), "%-6s  %-22s  %-22s  %s\n", "Scheme",
                  "Collision threshold", "Forge collision", "Second preimage");
    out << line;
    for (const auto& row : table2_rows()) {
        std::snprintf(line, sizeof(line), "%-6s  %-22s  %-22s  %s\n", row.scheme.c_str(),
                      row.collision_threshold.c_str(), row.forge_collision.c_str(),
                      row.second_preimage.c_str());
        out << line;
    }
    return out.str();
}

std::string render_table1_csv() {
    std::ostringstream out;
    out << "objects,capacity_10_byte_avg,capacity_1_kb_avg,collision_probability,"
           "collision_probability_pow2\n";
    for (const auto& row : table1_rows()) {
        out << row.objects_label << ',' << row.capacity_10_byte << ',' << row.capacity_1_kb << ','
            << row.collision.to_decimal() << ',' << row.collision.to_pow2() << '\n';
    }
    return out.str();
}

std::string render_table2_csv() {
    std::ostringstream out;
    out << "scheme,collision_threshold,forge_collision,second_preimage\n";
    for (const auto& row : table2_rows()) {
        out << row.scheme << ',' << row.collision_threshold << ',' << row.forge_collision << ','
            << row.second_preimage << '\n';
    }
    return out.str();
}

}  // namespace casket
