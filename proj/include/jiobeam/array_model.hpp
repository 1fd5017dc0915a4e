#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace jiobeam {

// Narrowband uniform-linear-array setup.  doas_deg[0] is the desired
// user's direction; the remaining entries are interferers.  Powers are
// linear; the noise floor is derived from the desired power and snr_db.
struct ArrayConfig {
    int m = 0;                          // sensor count
    double d_over_lambda = 0.5;         // element spacing / wavelength
    std::vector<double> doas_deg;       // source directions, degrees
    std::vector<double> source_powers;  // linear powers, one per source
    double snr_db = 10.0;               // input SNR of the desired user
    double presumed_doa_deg = 90.0;     // direction the receiver steers to
};

// Throws std::invalid_argument when the configuration is unusable:
// m < q, q < 1, a DOA outside (0, 180), duplicate DOAs, or a power <= 0.
void validate(const ArrayConfig& cfg);

struct SteeringVector {
    Eigen::VectorXcd entries;
    bool normalized = false;  // true once scaled to unit Euclidean norm
};

// Plane-wave array response toward theta_deg.  Raw form: entry k has
// unit modulus and phase -2*pi*k*(d/lambda)*cos(theta); entry 0 is 1.
// Throws std::domain_error when theta_deg is outside (0, 180).
SteeringVector steering_vector(const ArrayConfig& cfg, double theta_deg);

// Rescales to unit Euclidean norm (direction preserved).
SteeringVector normalize_steering(const SteeringVector& v);

// Per-sensor noise variance implied by the configured input SNR:
// source_powers[0] / 10^(snr_db/10).
double noise_power(const ArrayConfig& cfg);

// One Monte Carlo realization: N snapshots x(i) = A s(i) + n(i) with
// BPSK sources (+/- sqrt(power)) and circular complex Gaussian noise.
struct SnapshotBlock {
    Eigen::MatrixXcd x;   // N x m, row i is snapshot x(i)
    Eigen::MatrixXd s;    // N x q, scaled BPSK symbols
    std::uint64_t seed = 0;
};

// Deterministic given (cfg, n_snapshots, seed).  Symbols and noise are
// drawn snapshot by snapshot (q symbols, then m complex noise entries)
// from a single SplitMix64 stream.
SnapshotBlock generate_block(const ArrayConfig& cfg, int n_snapshots,
                             std::uint64_t seed);

// Default interferer placement when a scenario names only the source
// count: the desired user sits at 90 degrees and interferers occupy the
// even grid 20 + k*140/q, k = 1..q-1.  A grid point that collides with
// the desired direction is nudged half a grid step upward so directions
// stay pairwise distinct inside (20, 160).
std::vector<double> default_doas(int q);

} // namespace jiobeam
