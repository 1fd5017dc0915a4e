#include "jiobeam/fullrank.hpp"

#include <cmath>
#include <stdexcept>

namespace jiobeam {

namespace {

void check_sizes(const FullRankState& st, const Eigen::VectorXcd& x) {
    if (x.size() != st.w.size() || st.a0.size() != st.w.size())
        throw std::invalid_argument("fullrank: snapshot/weight size mismatch");
}

} // namespace

FullRankState init_fullrank(const Eigen::VectorXcd& a0, double mu) {
    if (a0.size() == 0)
        throw std::invalid_argument("init_fullrank: empty constraint vector");
    if (std::abs(a0.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("init_fullrank: constraint vector not unit norm");
    if (mu < 0.0)
        throw std::invalid_argument("init_fullrank: negative step size");
    FullRankState st;
    st.a0 = a0;
    st.mu = mu;
    st.w = a0 / a0.squaredNorm();
    return st;
}

std::complex<double> fullrank_output(const FullRankState& st,
                                     const Eigen::VectorXcd& x) {
    check_sizes(st, x);
    return st.w.dot(x);  // Eigen's dot conjugates the left argument
}

FullRankState ccm_sg_step(const FullRankState& st, const Eigen::VectorXcd& x) {
    check_sizes(st, x);
    const std::complex<double> y = st.w.dot(x);
    const double e = std::norm(y) - 1.0;
    // Project the constraint direction out of the data before stepping;
    // the constraint value w'a0 is untouched by construction.
    const Eigen::VectorXcd x_perp =
        x - st.a0 * (st.a0.dot(x) / st.a0.squaredNorm());
    FullRankState out = st;
    out.w -= st.mu * e * std::conj(y) * x_perp;
    return out;
}

FullRankState cmv_sg_step(const FullRankState& st, const Eigen::VectorXcd& x) {
    check_sizes(st, x);
    const std::complex<double> y = st.w.dot(x);
    const double a2 = st.a0.squaredNorm();
    const Eigen::VectorXcd v = st.w - st.mu * std::conj(y) * x;
    FullRankState out = st;
    // Affine projection back onto the constraint plane w'a0 = 1.
    out.w = v - st.a0 * (st.a0.dot(v) / a2) + st.a0 / a2;
    return out;
}

FullRankState ccm_closed_form(const Eigen::MatrixXcd& x,
                              const Eigen::VectorXcd& a0,
                              const Eigen::VectorXcd& init_w, int n_iters,
                              double loading) {
    const Eigen::Index m = a0.size();
    if (x.cols() != m || init_w.size() != m)
        throw std::invalid_argument("ccm_closed_form: size mismatch");
    if (x.rows() < m)
        throw std::invalid_argument("ccm_closed_form: block shorter than m");
    if (n_iters < 0)
        throw std::invalid_argument("ccm_closed_form: negative iteration count");

    const auto n = x.rows();
    Eigen::VectorXcd w = init_w;
    for (int it = 0; it < n_iters; ++it) {
        const Eigen::VectorXcd y = x * w.conjugate();  // y(i) = w'x(i)
        Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(m, m);
        Eigen::VectorXcd p = Eigen::VectorXcd::Zero(m);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::VectorXcd xi = x.row(i).transpose();
            R.noalias() += std::norm(y[i]) * xi * xi.adjoint();
            p.noalias() += std::conj(y[i]) * xi;
        }
        R /= static_cast<double>(n);
        p /= static_cast<double>(n);
        R += loading * (R.trace().real() / static_cast<double>(m)) *
             Eigen::MatrixXcd::Identity(m, m);

        const Eigen::LDLT<Eigen::MatrixXcd> ldlt(R);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("ccm_closed_form: singular covariance");
        const Eigen::VectorXcd Rp = ldlt.solve(p);
        const Eigen::VectorXcd Ra = ldlt.solve(a0);
        const std::complex<double> c = a0.dot(Rp);
        const double d = a0.dot(Ra).real();
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::runtime_error("ccm_closed_form: degenerate constraint scale");
        w = Rp - ((c - 1.0) / d) * Ra;
        if (!w.allFinite())
            throw std::runtime_error("ccm_closed_form: non-finite iterate");
    }

    FullRankState st;
    st.a0 = a0;
    st.mu = 0.0;
    st.w = w;
    return st;
}

} // namespace jiobeam
