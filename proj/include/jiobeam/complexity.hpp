#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace jiobeam {

// Arithmetic cost of one adaptation step (complex additions and
// multiplications) as a function of the array size m and, where the
// algorithm is reduced-rank, the rank r.
struct ComplexityCount {
    std::string algorithm;
    long long additions = 0;
    long long multiplications = 0;
};

// Known rows, in canonical order:
//   fullrank-cmv, fullrank-ccm, mswf-cmv, mswf-ccm, avf,
//   jio-cmv, jio-cmv-gs, jio-ccm, jio-ccm-gs
const std::vector<std::string>& complexity_rows();

// Exact integer evaluation of the cost polynomials for one row.
// r is ignored by the full-rank rows.  Throws std::invalid_argument for
// an unknown id or non-positive m/r.
ComplexityCount complexity_counts(std::string_view algorithm, long long m,
                                  long long r);

} // namespace jiobeam
