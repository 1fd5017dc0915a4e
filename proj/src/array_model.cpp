#include "jiobeam/array_model.hpp"
#include "jiobeam/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jiobeam {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
} // namespace

void validate(const ArrayConfig& cfg) {
    const auto q = static_cast<int>(cfg.doas_deg.size());
    if (q < 1)
        throw std::invalid_argument("ArrayConfig: at least one source required");
    if (cfg.m < q)
        throw std::invalid_argument("ArrayConfig: m < number of sources");
    if (cfg.source_powers.size() != cfg.doas_deg.size())
        throw std::invalid_argument("ArrayConfig: powers/DOAs length mismatch");
    if (cfg.d_over_lambda <= 0.0)
        throw std::invalid_argument("ArrayConfig: spacing must be positive");
    for (double th : cfg.doas_deg)
        if (!(th > 0.0 && th < 180.0))
            throw std::invalid_argument("ArrayConfig: DOA outside (0, 180): " +
                                        std::to_string(th));
    for (std::size_t i = 0; i < cfg.doas_deg.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.doas_deg.size(); ++j)
            if (cfg.doas_deg[i] == cfg.doas_deg[j])
                throw std::invalid_argument("ArrayConfig: duplicate DOA " +
                                            std::to_string(cfg.doas_deg[i]));
    for (double p : cfg.source_powers)
        if (!(p > 0.0))
            throw std::invalid_argument("ArrayConfig: source power must be positive");
    if (!(cfg.presumed_doa_deg > 0.0 && cfg.presumed_doa_deg < 180.0))
        throw std::invalid_argument("ArrayConfig: presumed DOA outside (0, 180)");
}

SteeringVector steering_vector(const ArrayConfig& cfg, double theta_deg) {
    if (!(theta_deg > 0.0 && theta_deg < 180.0))
        throw std::domain_error("steering_vector: angle outside (0, 180): " +
                                std::to_string(theta_deg));
    SteeringVector v;
    v.entries.resize(cfg.m);
    const double phase_step =
        -2.0 * kPi * cfg.d_over_lambda * std::cos(theta_deg * kPi / 180.0);
    for (int k = 0; k < cfg.m; ++k)
        v.entries[k] = std::polar(1.0, phase_step * k);
    v.normalized = false;
    return v;
}

SteeringVector normalize_steering(const SteeringVector& v) {
    const double n = v.entries.norm();
    if (n == 0.0)
        throw std::invalid_argument("normalize_steering: zero vector");
    SteeringVector out;
    out.entries = v.entries / n;
    out.normalized = true;
    return out;
}

double noise_power(const ArrayConfig& cfg) {
    validate(cfg);
    return cfg.source_powers[0] / std::pow(10.0, cfg.snr_db / 10.0);
}

SnapshotBlock generate_block(const ArrayConfig& cfg, int n_snapshots,
                             std::uint64_t seed) {
    validate(cfg);
    if (n_snapshots < 1)
        throw std::invalid_argument("generate_block: n_snapshots must be >= 1");

    const int q = static_cast<int>(cfg.doas_deg.size());
    Eigen::MatrixXcd A(cfg.m, q);
    for (int k = 0; k < q; ++k)
        A.col(k) = steering_vector(cfg, cfg.doas_deg[k]).entries;

    const double sigma_n2 = noise_power(cfg);
    Rng rng(seed);

    SnapshotBlock blk;
    blk.seed = seed;
    blk.x.resize(n_snapshots, cfg.m);
    blk.s.resize(n_snapshots, q);

    Eigen::VectorXcd xi(cfg.m);
    for (int i = 0; i < n_snapshots; ++i) {
        for (int k = 0; k < q; ++k)
            blk.s(i, k) = rng.next_bpsk() * std::sqrt(cfg.source_powers[k]);
        xi.setZero();
        for (int k = 0; k < q; ++k)
            xi += blk.s(i, k) * A.col(k);
        for (int j = 0; j < cfg.m; ++j)
            xi[j] += rng.next_cgaussian(sigma_n2);
        blk.x.row(i) = xi.transpose();
    }
    return blk;
}

std::vector<double> default_doas(int q) {
    if (q < 1)
        throw std::invalid_argument("default_doas: q must be >= 1");
    std::vector<double> doas;
    doas.reserve(q);
    doas.push_back(90.0);
    const double step = 140.0 / q;
    for (int k = 1; k < q; ++k) {
        double th = 20.0 + k * step;
        if (std::abs(th - 90.0) < 1e-9)
            th = 90.0 + 0.5 * step;  // keep clear of the desired user
        doas.push_back(th);
    }
    return doas;
}

} // namespace jiobeam
