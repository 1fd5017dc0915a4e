#pragma once

#include "jiobeam/complexity.hpp"
#include "jiobeam/metrics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jiobeam {

// Plain-text CSV emission with '\n' line endings and locale-independent
// number formatting, so identical inputs produce byte-identical files.

// Header: algorithm,snapshot,sinr_db,n_runs,rank,mu_T,mu_w,seed.
// One row per (curve, snapshot).  Full-rank curves carry rank = m,
// mu_T = 0 and mu_w = the full-rank step size.
std::string curves_to_csv(const std::vector<SinrCurve>& curves);

// Header: algorithm,rank,sinr_db.
std::string rank_sweep_to_csv(
    const std::vector<std::pair<std::string, std::vector<std::pair<int, double>>>>&
        sweeps);

// Header: algorithm,m,r,additions,multiplications.
std::string complexity_to_csv(const std::vector<ComplexityCount>& rows,
                              long long m, long long r);

// Writes content to path, creating or truncating the file.
// Throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& content);

} // namespace jiobeam
