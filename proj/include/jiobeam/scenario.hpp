#pragma once

#include "jiobeam/array_model.hpp"

#include <cstdint>
#include <string>

namespace jiobeam {

// A full experiment description: the array plus ensemble size, horizon,
// rank, step sizes, and seeding.  Defaults mirror the bundled scenarios
// (32-sensor array, rank 5, desk-scale ensemble of 100 runs).
struct Scenario {
    ArrayConfig cfg;
    int n_snapshots = 500;
    int n_runs = 100;
    std::uint64_t master_seed = 1;
    int rank = 5;
    double mu_T = 0.002;        // transformation step size
    double mu_w = 0.001;        // reduced-rank weight step size
    double mu_T_gs = 0.003;     // same, orthonormalized variant
    double mu_w_gs = 0.0007;
    double mu_fullrank = 0.001; // full-rank baselines
    int gs_period = 1;          // reformate T every this many snapshots
};

// Reads a scenario from JSON.  Required: "m".  Sources come either from
// "doas_deg" (array, desired user first) or "num_sources" (the default
// evenly-spaced placement); "source_powers" defaults to all ones and
// "presumed_doa_deg" to the desired user's true direction.  Optional
// keys with defaults as above: d_over_lambda, snr_db, n_snapshots,
// n_runs, master_seed, rank, mu_t, mu_w, mu_t_gs, mu_w_gs, mu_fullrank,
// gs_period.  Throws std::runtime_error when the file cannot be read or
// parsed, std::invalid_argument when the contents are invalid.
Scenario load_scenario(const std::string& path);

} // namespace jiobeam
