// Command-line front end: loads a scenario, dispatches one experiment,
// and writes CSV.  Exit codes: 0 success, 1 runtime failure, 2 usage.

#include "jiobeam/array_model.hpp"
#include "jiobeam/complexity.hpp"
#include "jiobeam/csv.hpp"
#include "jiobeam/fullrank.hpp"
#include "jiobeam/jio.hpp"
#include "jiobeam/metrics.hpp"
#include "jiobeam/rng.hpp"
#include "jiobeam/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

const std::vector<std::string> kCurveAlgos = {
    "fullrank-cmv-sg", "fullrank-ccm-sg", "jio-ccm", "jio-ccm-gs"};

struct Overrides {
    int runs = -1;
    int snapshots = -1;
    int rank = -1;
    long long seed = -1;
    double mu_t = -1.0, mu_w = -1.0, mu_t_gs = -1.0, mu_w_gs = -1.0;
    int gs_period = -1;
};

void apply(const Overrides& o, jiobeam::Scenario& sc) {
    if (o.runs > 0) sc.n_runs = o.runs;
    if (o.snapshots > 0) sc.n_snapshots = o.snapshots;
    if (o.rank > 0) sc.rank = o.rank;
    if (o.seed >= 0) sc.master_seed = static_cast<std::uint64_t>(o.seed);
    if (o.mu_t >= 0.0) sc.mu_T = o.mu_t;
    if (o.mu_w >= 0.0) {
        sc.mu_w = o.mu_w;
        sc.mu_fullrank = o.mu_w;
    }
    if (o.mu_t_gs >= 0.0) sc.mu_T_gs = o.mu_t_gs;
    if (o.mu_w_gs >= 0.0) sc.mu_w_gs = o.mu_w_gs;
    if (o.gs_period > 0) sc.gs_period = o.gs_period;
}

void add_override_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--runs", o.runs, "Monte Carlo runs (ensemble size K)");
    cmd->add_option("--snapshots", o.snapshots, "Snapshots per run (N)");
    cmd->add_option("--rank", o.rank, "Reduced rank r");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--mu-t", o.mu_t, "Transformation step size");
    cmd->add_option("--mu-w", o.mu_w,
                    "Weight step size (also the full-rank baselines')");
    cmd->add_option("--mu-t-gs", o.mu_t_gs,
                    "Transformation step size, orthonormalized variant");
    cmd->add_option("--mu-w-gs", o.mu_w_gs,
                    "Weight step size, orthonormalized variant");
    cmd->add_option("--gs-period", o.gs_period,
                    "Re-orthonormalize every P-th snapshot (default 1)");
}

int run_selftest() {
    using namespace jiobeam;
    int failures = 0;
    auto check = [&](bool ok, const char* what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok)
            ++failures;
    };

    ArrayConfig cfg;
    cfg.m = 4;
    cfg.doas_deg = {90.0};
    cfg.source_powers = {1.0};
    cfg.snr_db = 10.0;
    cfg.presumed_doa_deg = 90.0;

    const auto a90 = steering_vector(cfg, 90.0).entries;
    check((a90 - Eigen::VectorXcd::Ones(4)).norm() < 1e-12,
          "steering vector at broadside is all ones");

    ArrayConfig cfg2 = cfg;
    cfg2.m = 2;
    const auto a60 = steering_vector(cfg2, 60.0).entries;
    check(std::abs(a60[1] - std::complex<double>(0.0, -1.0)) < 1e-12,
          "steering phase at 60 degrees");

    check(std::abs(noise_power(cfg) - 0.1) < 1e-15,
          "noise power at 10 dB SNR");

    const auto b1 = generate_block(cfg, 64, 42);
    const auto b2 = generate_block(cfg, 64, 42);
    check(b1.x == b2.x && b1.s == b2.s, "block generation is deterministic");

    // Constraint maintenance over a noisy interference scenario.
    ArrayConfig cfg3;
    cfg3.m = 8;
    cfg3.doas_deg = {90.0, 40.0, 140.0};
    cfg3.source_powers = {1.0, 1.0, 1.0};
    cfg3.snr_db = 10.0;
    cfg3.presumed_doa_deg = 90.0;
    const auto a0 =
        normalize_steering(steering_vector(cfg3, 90.0)).entries;
    const auto xs = filter_frame(generate_block(cfg3, 1000, 7).x);

    FullRankState fc = init_fullrank(a0, 0.001);
    FullRankState fm = init_fullrank(a0, 0.001);
    double worst_cc = 0.0, worst_mv = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::VectorXcd x = xs.row(i).transpose();
        fc = ccm_sg_step(fc, x);
        fm = cmv_sg_step(fm, x);
        worst_cc = std::max(worst_cc, std::abs(fc.w.dot(a0) - 1.0));
        worst_mv = std::max(worst_mv, std::abs(fm.w.dot(a0) - 1.0));
    }
    check(worst_cc < 1e-9, "full-rank CM step preserves the constraint");
    check(worst_mv < 1e-12, "full-rank MV step restores the constraint");

    JioState js = init_state(a0, 3, 0.002, 0.001, false);
    JioState jg = init_state(a0, 3, 0.003, 0.0007, true);
    double worst_jio = 0.0, worst_orth = 0.0, worst_gs = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::VectorXcd x = xs.row(i).transpose();
        js = jio_step(js, x).first;
        jg = jio_step(jg, x).first;
        worst_jio = std::max(worst_jio,
                             std::abs(js.w_bar.dot(js.a_bar) - 1.0));
        worst_gs = std::max(worst_gs,
                            std::abs(jg.w_bar.dot(jg.a_bar) - 1.0));
        worst_orth = std::max(
            worst_orth, (jg.T.adjoint() * jg.T -
                         Eigen::MatrixXcd::Identity(3, 3))
                            .norm());
    }
    check(worst_jio < 1e-6, "joint update preserves the constraint");
    check(worst_gs < 1e-6, "orthonormalized variant restores the constraint");
    check(worst_orth < 1e-8, "reformed transformation stays orthonormal");

    const Eigen::VectorXcd wcf = closed_form_w(xs, js);
    check(std::abs(wcf.dot(js.a_bar) - 1.0) < 1e-10,
          "closed-form weights satisfy the constraint");

    const auto c1 = complexity_counts("fullrank-ccm", 32, 1);
    const auto c2 = complexity_counts("jio-ccm", 32, 5);
    check(c1.additions == 96 && c1.multiplications == 131,
          "complexity row: full-rank CM at m=32");
    check(c2.additions == 680 && c2.multiplications == 713,
          "complexity row: joint scheme at m=32, r=5");

    Scenario sc;
    sc.cfg = cfg3;
    sc.n_snapshots = 50;
    sc.n_runs = 8;
    sc.rank = 3;
    const SinrCurve u = run_ensemble(sc, "jio-ccm");
    const SinrCurve v = run_ensemble(sc, "jio-ccm");
    check(u.sinr_db == v.sinr_db, "ensemble curves are deterministic");

    std::cout << (failures == 0 ? "selftest: ok" : "selftest: FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Reduced-rank adaptive beamformer simulator.\n"
        "Writes experiment results as CSV.  The environment variable\n"
        "BEAMFORM_THREADS caps the Monte Carlo thread pool (results are\n"
        "identical for any thread count)."};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    Overrides ov;
    double mismatch_deg = 2.0;
    long long cm = 32, cr = 5;

    CLI::App* curve = app.add_subcommand(
        "curve", "Learning curves for all four algorithms");
    curve->add_option("--scenario", scenario_path, "Scenario JSON file")
        ->required();
    curve->add_option("--out", out_path, "Output CSV path")->required();
    add_override_flags(curve, ov);

    CLI::App* sweep = app.add_subcommand(
        "rank-sweep",
        "SINR at the final snapshot for ranks 1..min(8, m-1), both joint "
        "algorithms");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON file")
        ->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    add_override_flags(sweep, ov);

    CLI::App* mism = app.add_subcommand(
        "mismatch", "Learning curves with a deliberately offset constraint");
    mism->add_option("--scenario", scenario_path, "Scenario JSON file")
        ->required();
    mism->add_option("--out", out_path, "Output CSV path")->required();
    mism->add_option("--mismatch-deg", mismatch_deg,
                     "Constraint offset in degrees (default 2)");
    add_override_flags(mism, ov);

    CLI::App* comp = app.add_subcommand(
        "complexity", "Arithmetic cost table for all algorithms");
    comp->add_option("--m", cm, "Array size (default 32)");
    comp->add_option("--r", cr, "Reduced rank (default 5)");
    comp->add_option("--out", out_path, "Output CSV path")->required();

    app.add_subcommand("selftest", "Run the built-in invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits 0; any usage error exits 2
    }

    try {
        if (app.got_subcommand("selftest"))
            return run_selftest();

        if (app.got_subcommand("complexity")) {
            std::vector<jiobeam::ComplexityCount> rows;
            for (const std::string& id : jiobeam::complexity_rows())
                rows.push_back(jiobeam::complexity_counts(id, cm, cr));
            jiobeam::write_file(out_path,
                                jiobeam::complexity_to_csv(rows, cm, cr));
            return 0;
        }

        // The remaining commands need a scenario file.
        if (!std::filesystem::exists(scenario_path)) {
            std::cerr << "error: scenario file not found: " << scenario_path
                      << "\n";
            return 2;
        }
        jiobeam::Scenario sc = jiobeam::load_scenario(scenario_path);
        apply(ov, sc);

        if (app.got_subcommand("curve")) {
            std::vector<jiobeam::SinrCurve> curves;
            for (const std::string& algo : kCurveAlgos)
                curves.push_back(jiobeam::run_ensemble(sc, algo));
            jiobeam::write_file(out_path, jiobeam::curves_to_csv(curves));
            return 0;
        }

        if (app.got_subcommand("rank-sweep")) {
            std::vector<int> ranks;
            for (int r = 1; r <= std::min(8, sc.cfg.m - 1); ++r)
                ranks.push_back(r);
            std::vector<std::pair<std::string,
                                  std::vector<std::pair<int, double>>>>
                sweeps;
            for (const std::string algo : {"jio-ccm", "jio-ccm-gs"})
                sweeps.emplace_back(
                    algo, jiobeam::rank_sweep(sc, algo, ranks,
                                              sc.n_snapshots));
            jiobeam::write_file(out_path,
                                jiobeam::rank_sweep_to_csv(sweeps));
            return 0;
        }

        if (app.got_subcommand("mismatch")) {
            const auto curves = jiobeam::mismatch_experiment(
                sc, kCurveAlgos, mismatch_deg);
            jiobeam::write_file(out_path, jiobeam::curves_to_csv(curves));
            return 0;
        }

        std::cerr << "error: no command dispatched\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
