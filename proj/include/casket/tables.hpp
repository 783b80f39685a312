// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "casket/probability.hpp"

namespace casket {

/// One fill-rate row of the M-scheme collision table: an object count, the
/// cluster capacity that count represents at two average file sizes, and the
/// collision probability bound.
struct Table1Row {
    double objects;
    std::string objects_label;       ///< e.g. "1e+06"
    std::string capacity_10_byte;    ///< e.g. "10 Megabyte"
    std::string capacity_1_kb;       ///< e.g. "1 Gigabyte"
    Probability collision;
};

/// One naming-scheme row of the strength-summary table. The work columns
/// are documented attacker-cost figures, not computed quantities.
struct Table2Row {
    std::string scheme;
    std::string collision_threshold;  ///< files beyond which collisions become likely
    std::string forge_collision;      ///< work to forge two files with one CA
    std::string second_preimage;      ///< work to forge a second preimage of a given file
};

/// Ten rows, 10^6 through 10^15 objects.
std::vector<Table1Row> table1_rows();

/// Three rows: M, GM, M++.
std::vector<Table2Row> table2_rows();

/// Aligned plain-text renderings.
std::string render_table1_text();
std::string render_table2_text();

/// Machine-readable renderings: comma-separated with a header line;
/// probabilities in both decimal and power-of-two notation.
std::string render_table1_csv();
std::string render_table2_csv();

}  // namespace casket
