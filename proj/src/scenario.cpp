#include "jiobeam/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace jiobeam {

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_scenario: cannot open " + path);

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_scenario: parse error in " + path +
                                 ": " + e.what());
    }

    try {
        Scenario sc;
        sc.cfg.m = j.at("m").get<int>();
        sc.cfg.d_over_lambda = j.value("d_over_lambda", 0.5);
        sc.cfg.snr_db = j.value("snr_db", 10.0);

        if (j.contains("doas_deg")) {
            sc.cfg.doas_deg = j["doas_deg"].get<std::vector<double>>();
        } else if (j.contains("num_sources")) {
            sc.cfg.doas_deg = default_doas(j["num_sources"].get<int>());
        } else {
            throw std::invalid_argument(
                "load_scenario: need doas_deg or num_sources");
        }

        if (j.contains("source_powers"))
            sc.cfg.source_powers =
                j["source_powers"].get<std::vector<double>>();
        else
            sc.cfg.source_powers.assign(sc.cfg.doas_deg.size(), 1.0);

        sc.cfg.presumed_doa_deg =
            j.value("presumed_doa_deg", sc.cfg.doas_deg.empty()
                                            ? 90.0
                                            : sc.cfg.doas_deg.front());

        sc.n_snapshots = j.value("n_snapshots", 500);
        sc.n_runs = j.value("n_runs", 100);
        sc.master_seed = j.value("master_seed", std::uint64_t{1});
        sc.rank = j.value("rank", 5);
        sc.mu_T = j.value("mu_t", 0.002);
        sc.mu_w = j.value("mu_w", 0.001);
        sc.mu_T_gs = j.value("mu_t_gs", 0.003);
        sc.mu_w_gs = j.value("mu_w_gs", 0.0007);
        sc.mu_fullrank = j.value("mu_fullrank", sc.mu_w);
        sc.gs_period = j.value("gs_period", 1);

        if (sc.n_snapshots < 1 || sc.n_runs < 1)
            throw std::invalid_argument(
                "load_scenario: n_snapshots and n_runs must be >= 1");
        if (sc.gs_period < 1)
            throw std::invalid_argument("load_scenario: gs_period must be >= 1");
        if (sc.rank < 1 || sc.rank > sc.cfg.m)
            throw std::invalid_argument(
                "load_scenario: rank must be in [1, m]");
        validate(sc.cfg);
        return sc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("load_scenario: bad field in " + path +
                                    ": " + e.what());
    }
}

} // namespace jiobeam
