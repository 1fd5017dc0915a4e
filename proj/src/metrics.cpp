#include "jiobeam/metrics.hpp"

#include "jiobeam/fullrank.hpp"
#include "jiobeam/jio.hpp"
#include "jiobeam/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace jiobeam {

namespace {

constexpr double kFloorDb = -300.0;
constexpr double kFloorLinear = 1e-30;

int thread_cap() {
    if (const char* env = std::getenv("BEAMFORM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

bool known_algo(std::string_view algo) {
    return algo == "fullrank-cmv-sg" || algo == "fullrank-ccm-sg" ||
           algo == "jio-ccm" || algo == "jio-ccm-gs";
}

// Per-snapshot linear output SINR of one freshly seeded run.  A filter
// that goes non-finite (or throws out of a degenerate reformation) is
// frozen: the remaining snapshots score the floor.
std::vector<double> single_run(const Scenario& sc, std::string_view algo,
                               const Eigen::VectorXcd& a0,
                               std::uint64_t run_seed) {
    const SnapshotBlock blk =
        generate_block(sc.cfg, sc.n_snapshots, run_seed);
    const Eigen::MatrixXcd xs = filter_frame(blk.x);

    std::vector<double> lin(static_cast<std::size_t>(sc.n_snapshots),
                            kFloorLinear);

    const bool is_jio = algo == "jio-ccm" || algo == "jio-ccm-gs";
    const bool use_gs = algo == "jio-ccm-gs";

    FullRankState fr;
    JioState jio;
    if (is_jio) {
        jio = init_state(a0, sc.rank, use_gs ? sc.mu_T_gs : sc.mu_T,
                         use_gs ? sc.mu_w_gs : sc.mu_w, false);
    } else {
        fr = init_fullrank(a0, sc.mu_fullrank);
    }

    Eigen::VectorXcd w_eq(sc.cfg.m);
    for (int i = 0; i < sc.n_snapshots; ++i) {
        const Eigen::VectorXcd x = xs.row(i).transpose();
        try {
            if (is_jio) {
                jio.gs_enabled = use_gs && (i % sc.gs_period == 0);
                jio = jio_step(jio, x).first;
                w_eq.noalias() = jio.T * jio.w_bar;
            } else if (algo == "fullrank-ccm-sg") {
                fr = ccm_sg_step(fr, x);
                w_eq = fr.w;
            } else {
                fr = cmv_sg_step(fr, x);
                w_eq = fr.w;
            }
        } catch (const std::runtime_error&) {
            break;  // diverged; the floor already fills the tail
        }
        if (!w_eq.allFinite())
            break;
        const double db = output_sinr(w_eq, sc.cfg);
        lin[static_cast<std::size_t>(i)] = std::pow(10.0, db / 10.0);
    }
    return lin;
}

} // namespace

double output_sinr(const Eigen::VectorXcd& w_eq, const ArrayConfig& cfg) {
    validate(cfg);
    if (w_eq.size() != cfg.m)
        throw std::invalid_argument("output_sinr: weight size mismatch");
    if (!w_eq.allFinite())
        return kFloorDb;
    if (w_eq.norm() == 0.0)
        throw std::invalid_argument("output_sinr: zero weight vector");

    const int q = static_cast<int>(cfg.doas_deg.size());
    const Eigen::VectorXcd a_soi =
        steering_vector(cfg, cfg.doas_deg[0]).entries;

    // w' R_in w accumulated source by source; avoids forming the m x m
    // covariance.
    double den = noise_power(cfg) * w_eq.squaredNorm();
    for (int k = 1; k < q; ++k) {
        const Eigen::VectorXcd ak =
            steering_vector(cfg, cfg.doas_deg[k]).entries;
        den += cfg.source_powers[k] * std::norm(w_eq.dot(ak));
    }
    const double num = cfg.source_powers[0] * std::norm(w_eq.dot(a_soi));
    if (!(den > 0.0) || !std::isfinite(num))
        return kFloorDb;
    const double ratio = num / den;
    if (!(ratio > std::pow(10.0, kFloorDb / 10.0)))
        return kFloorDb;
    return 10.0 * std::log10(ratio);
}

Eigen::MatrixXcd filter_frame(const Eigen::MatrixXcd& x_raw) {
    return x_raw / std::sqrt(static_cast<double>(x_raw.cols()));
}

SinrCurve run_ensemble(const Scenario& sc, std::string_view algo) {
    if (!known_algo(algo))
        throw std::invalid_argument("run_ensemble: unknown algorithm '" +
                                    std::string(algo) + "'");
    validate(sc.cfg);
    if (sc.rank < 1 || sc.rank > sc.cfg.m)
        throw std::invalid_argument("run_ensemble: rank outside [1, m]");

    const Eigen::VectorXcd a0 =
        normalize_steering(steering_vector(sc.cfg, sc.cfg.presumed_doa_deg))
            .entries;

    const int runs = sc.n_runs;
    std::vector<std::vector<double>> per_run(static_cast<std::size_t>(runs));

    const int workers = std::min(thread_cap(), runs);
    std::atomic<int> next{0};
    auto body = [&]() {
        for (int k = next.fetch_add(1); k < runs; k = next.fetch_add(1))
            per_run[static_cast<std::size_t>(k)] =
                single_run(sc, algo, a0, derive_run_seed(sc.master_seed,
                                                         static_cast<std::uint64_t>(k)));
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back(body);
        for (auto& th : pool)
            th.join();
    }

    SinrCurve curve;
    curve.algorithm = std::string(algo);
    curve.n_runs = runs;
    curve.seed = sc.master_seed;
    const bool is_jio = algo == "jio-ccm" || algo == "jio-ccm-gs";
    const bool use_gs = algo == "jio-ccm-gs";
    curve.rank = is_jio ? sc.rank : sc.cfg.m;
    curve.mu_T = is_jio ? (use_gs ? sc.mu_T_gs : sc.mu_T) : 0.0;
    curve.mu_w = is_jio ? (use_gs ? sc.mu_w_gs : sc.mu_w) : sc.mu_fullrank;

    curve.snapshots.resize(static_cast<std::size_t>(sc.n_snapshots));
    curve.sinr_db.resize(static_cast<std::size_t>(sc.n_snapshots));
    for (int i = 0; i < sc.n_snapshots; ++i) {
        double acc = 0.0;  // fixed run order: bitwise-stable reduction
        for (int k = 0; k < runs; ++k)
            acc += per_run[static_cast<std::size_t>(k)]
                          [static_cast<std::size_t>(i)];
        const double mean = acc / static_cast<double>(runs);
        curve.snapshots[static_cast<std::size_t>(i)] = i + 1;
        curve.sinr_db[static_cast<std::size_t>(i)] =
            std::max(10.0 * std::log10(mean), kFloorDb);
    }
    return curve;
}

std::vector<std::pair<int, double>> rank_sweep(const Scenario& sc,
                                               std::string_view algo,
                                               const std::vector<int>& ranks,
                                               int n_fixed) {
    if (n_fixed < 1)
        throw std::invalid_argument("rank_sweep: n_fixed must be >= 1");
    for (int r : ranks)
        if (r < 1 || r >= sc.cfg.m)
            throw std::invalid_argument("rank_sweep: rank outside [1, m-1]");

    std::vector<std::pair<int, double>> out;
    out.reserve(ranks.size());
    for (int r : ranks) {
        Scenario s2 = sc;
        s2.rank = r;
        s2.n_snapshots = n_fixed;
        const SinrCurve c = run_ensemble(s2, algo);
        out.emplace_back(r, c.sinr_db.back());
    }
    return out;
}

std::vector<SinrCurve> mismatch_experiment(const Scenario& sc,
                                           const std::vector<std::string>& algos,
                                           double mismatch_deg) {
    if (!(std::abs(mismatch_deg) < 90.0))
        throw std::invalid_argument(
            "mismatch_experiment: |mismatch_deg| must be < 90");
    Scenario s2 = sc;
    s2.cfg.presumed_doa_deg = sc.cfg.doas_deg.at(0) + mismatch_deg;
    std::vector<SinrCurve> out;
    out.reserve(algos.size());
    for (const std::string& algo : algos)
        out.push_back(run_ensemble(s2, algo));
    return out;
}

std::pair<double, double> steady_state_stats(const SinrCurve& curve,
                                             int window) {
    const auto n = static_cast<int>(curve.sinr_db.size());
    if (window < 1 || window > n)
        throw std::invalid_argument("steady_state_stats: bad window");
    double mean = 0.0;
    for (int i = n - window; i < n; ++i)
        mean += curve.sinr_db[static_cast<std::size_t>(i)];
    mean /= static_cast<double>(window);
    double var = 0.0;
    for (int i = n - window; i < n; ++i) {
        const double d = curve.sinr_db[static_cast<std::size_t>(i)] - mean;
        var += d * d;
    }
    var /= static_cast<double>(window);
    return {mean, std::sqrt(var)};
}

} // namespace jiobeam
