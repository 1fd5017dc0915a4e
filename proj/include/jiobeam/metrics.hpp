#pragma once

#include "jiobeam/array_model.hpp"
#include "jiobeam/scenario.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jiobeam {

// Ensemble-averaged learning curve for one algorithm.
struct SinrCurve {
    std::string algorithm;
    std::vector<int> snapshots;   // 1..N
    std::vector<double> sinr_db;  // ensemble mean per snapshot
    int n_runs = 0;
    int rank = 0;                 // m for the full-rank baselines
    double mu_T = 0.0;            // 0 for the full-rank baselines
    double mu_w = 0.0;
    std::uint64_t seed = 0;
};

// Analytic output SINR of an equivalent filter against the true array
// parameters:  powers[0]*|w'a(theta_0)|^2 / (w' R_in w) with
// R_in = sum_{k>=1} powers[k] a_k a_k' + noise*I (raw steering vectors).
// Invariant to nonzero complex scaling of w_eq.  Results are floored at
// -300 dB; a non-finite w_eq (a diverged filter) also scores the floor.
// Throws std::invalid_argument for a zero or wrongly sized w_eq.
double output_sinr(const Eigen::VectorXcd& w_eq, const ArrayConfig& cfg);

// The frame adaptation runs in: raw snapshots scaled by 1/sqrt(m), so a
// unit-norm constraint vector sees the desired signal with unit gain.
Eigen::MatrixXcd filter_frame(const Eigen::MatrixXcd& x_raw);

// Monte Carlo learning curve.  algo is one of
//   fullrank-cmv-sg, fullrank-ccm-sg, jio-ccm, jio-ccm-gs.
// Every run draws a fresh block from derive_run_seed(master_seed, run),
// adapts a fresh filter, and scores the equivalent filter (w, or T w_bar)
// after each snapshot; runs are averaged in linear power and converted
// to dB.  Runs whose filter diverges are frozen at the -300 dB floor
// from that snapshot on, so the curve stays finite and deterministic.
// The reduction is in fixed run order: results are bit-identical no
// matter how many threads execute (BEAMFORM_THREADS caps the pool).
// Throws std::invalid_argument for an unknown algorithm id.
SinrCurve run_ensemble(const Scenario& sc, std::string_view algo);

// SINR at snapshot n_fixed for each rank, full ensemble each.
// Throws std::invalid_argument when a rank falls outside [1, m-1].
std::vector<std::pair<int, double>> rank_sweep(const Scenario& sc,
                                               std::string_view algo,
                                               const std::vector<int>& ranks,
                                               int n_fixed);

// Re-runs the ensemble with the constraint built mismatch_deg away from
// the true desired direction (signal synthesis keeps the true one).
// Throws std::invalid_argument when |mismatch_deg| >= 90.
std::vector<SinrCurve> mismatch_experiment(const Scenario& sc,
                                           const std::vector<std::string>& algos,
                                           double mismatch_deg);

// Mean and population standard deviation of the last `window` points.
// Throws std::invalid_argument when window is < 1 or exceeds the curve.
std::pair<double, double> steady_state_stats(const SinrCurve& curve,
                                             int window);

} // namespace jiobeam
