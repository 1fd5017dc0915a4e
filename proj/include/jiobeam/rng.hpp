#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace jiobeam {

// Counter-style seedable generator (SplitMix64 core).  Every Monte Carlo
// run owns its own instance seeded through derive_run_seed, so results do
// not depend on how runs are scheduled across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the paired deviate is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    // Circular complex Gaussian with the given total variance
    // (variance/2 in each of the real and imaginary parts).
    std::complex<double> next_cgaussian(double variance) {
        const double s = std::sqrt(variance * 0.5);
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {s * re, s * im};
    }

    // BPSK symbol, equiprobable -1 / +1.
    double next_bpsk() { return next_double() < 0.5 ? -1.0 : 1.0; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Stateless mix of (master seed, run index) into an independent stream
// seed.  Runs are reproducible individually, not just as an ensemble.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                     std::uint64_t run_index) {
    std::uint64_t z = master_seed ^ (run_index * 0x9e3779b97f4a7c15ULL
                                     + 0x2545f4914f6cdd1dULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace jiobeam
