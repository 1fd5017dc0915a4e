#include "jiobeam/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace jiobeam {

namespace {

// Shortest round-trippable decimal form, independent of global locale.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string curves_to_csv(const std::vector<SinrCurve>& curves) {
    std::string out = "algorithm,snapshot,sinr_db,n_runs,rank,mu_T,mu_w,seed\n";
    for (const SinrCurve& c : curves) {
        for (std::size_t i = 0; i < c.sinr_db.size(); ++i) {
            out += c.algorithm;
            out += ',';
            out += std::to_string(c.snapshots[i]);
            out += ',';
            out += fmt(c.sinr_db[i]);
            out += ',';
            out += std::to_string(c.n_runs);
            out += ',';
            out += std::to_string(c.rank);
            out += ',';
            out += fmt(c.mu_T);
            out += ',';
            out += fmt(c.mu_w);
            out += ',';
            out += std::to_string(c.seed);
            out += '\n';
        }
    }
    return out;
}

std::string rank_sweep_to_csv(
    const std::vector<std::pair<std::string, std::vector<std::pair<int, double>>>>&
        sweeps) {
    std::string out = "algorithm,rank,sinr_db\n";
    for (const auto& [algo, points] : sweeps) {
        for (const auto& [rank, sinr] : points) {
            out += algo;
            out += ',';
            out += std::to_string(rank);
            out += ',';
            out += fmt(sinr);
            out += '\n';
        }
    }
    return out;
}

std::string complexity_to_csv(const std::vector<ComplexityCount>& rows,
                              long long m, long long r) {
    std::string out = "algorithm,m,r,additions,multiplications\n";
    for (const ComplexityCount& c : rows) {
        out += c.algorithm;
        out += ',';
        out += std::to_string(m);
        out += ',';
        out += std::to_string(r);
        out += ',';
        out += std::to_string(c.additions);
        out += ',';
        out += std::to_string(c.multiplications);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("write_file: cannot open " + path);
    f << content;
    if (!f)
        throw std::runtime_error("write_file: write failed for " + path);
}

} // namespace jiobeam
