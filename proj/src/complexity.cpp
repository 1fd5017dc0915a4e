#include "jiobeam/complexity.hpp"

#include <stdexcept>

namespace jiobeam {

const std::vector<std::string>& complexity_rows() {
    static const std::vector<std::string> rows = {
        "fullrank-cmv", "fullrank-ccm", "mswf-cmv", "mswf-ccm", "avf",
        "jio-cmv",      "jio-cmv-gs",   "jio-ccm",  "jio-ccm-gs",
    };
    return rows;
}

ComplexityCount complexity_counts(std::string_view algorithm, long long m,
                                  long long r) {
    if (m < 1 || r < 1)
        throw std::invalid_argument("complexity_counts: m and r must be >= 1");

    ComplexityCount c;
    c.algorithm = std::string(algorithm);
    if (algorithm == "fullrank-cmv") {
        c.additions = 3 * m - 1;
        c.multiplications = 4 * m + 1;
    } else if (algorithm == "fullrank-ccm") {
        c.additions = 3 * m;
        c.multiplications = 4 * m + 3;
    } else if (algorithm == "mswf-cmv") {
        c.additions = r * m * m + r * m + m + 2 * r - 2;
        c.multiplications = r * m * m + m * m + 2 * r * m + 5 * r + 2;
    } else if (algorithm == "mswf-ccm") {
        c.additions = r * m * m + r * m + m + 2 * r - 1;
        c.multiplications = r * m * m + m * m + 2 * r * m + 5 * r + 4;
    } else if (algorithm == "avf") {
        c.additions = r * (4 * m * m + m - 2) + 5 * m * m - m - 1;
        c.multiplications = r * (5 * m * m + 3 * m) + 8 * m * m + 2 * m;
    } else if (algorithm == "jio-cmv") {
        c.additions = 4 * r * m + m + 2 * r - 3;
        c.multiplications = 4 * r * m + m + 7 * r + 3;
    } else if (algorithm == "jio-cmv-gs") {
        c.additions = 7 * r * m - m - 1;
        c.multiplications = 7 * r * m - 2 * m + 8 * r + 2;
    } else if (algorithm == "jio-ccm") {
        c.additions = 4 * r * m + m + 2 * r - 2;
        c.multiplications = 4 * r * m + m + 7 * r + 6;
    } else if (algorithm == "jio-ccm-gs") {
        c.additions = 7 * r * m - m;
        c.multiplications = 7 * r * m - 2 * m + 8 * r + 5;
    } else {
        throw std::invalid_argument("complexity_counts: unknown algorithm '" +
                                    std::string(algorithm) + "'");
    }
    return c;
}

} // namespace jiobeam
