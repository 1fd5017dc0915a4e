#include "jiobeam/jio.hpp"

#include <cmath>
#include <stdexcept>

namespace jiobeam {

namespace {

void check_unit_a0(const Eigen::VectorXcd& a0, const char* where) {
    if (std::abs(a0.norm() - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(where) +
                                    ": constraint vector not unit norm");
}

} // namespace

JioState init_state(const Eigen::VectorXcd& a0, int r, double mu_T,
                    double mu_w, bool gs) {
    const auto m = a0.size();
    if (r < 1 || r > m)
        throw std::invalid_argument("init_state: rank outside [1, m]");
    check_unit_a0(a0, "init_state");
    if (mu_T < 0.0 || mu_w < 0.0)
        throw std::invalid_argument("init_state: negative step size");

    JioState st;
    st.a0 = a0;
    st.mu_T = mu_T;
    st.mu_w = mu_w;
    st.gs_enabled = gs;
    st.T = Eigen::MatrixXcd::Zero(m, r);
    st.T.topRows(r) = Eigen::MatrixXcd::Identity(r, r);
    st.a_bar = st.T.adjoint() * a0;  // = first r entries of a0
    const double n2 = st.a_bar.squaredNorm();
    if (n2 < 1e-24)
        throw std::invalid_argument(
            "init_state: leading entries of the constraint vector are zero; "
            "the canonical start cannot satisfy the constraint");
    st.w_bar = st.a_bar / n2;
    return st;
}

Eigen::VectorXcd project(const JioState& st, const Eigen::VectorXcd& x) {
    if (x.size() != st.T.rows())
        throw std::invalid_argument("project: snapshot size mismatch");
    return st.T.adjoint() * x;
}

CmSample forward(const JioState& st, const Eigen::VectorXcd& x) {
    CmSample s;
    s.x = x;
    s.x_bar = project(st, x);
    s.y = st.w_bar.dot(s.x_bar);
    s.e = std::norm(s.y) - 1.0;
    return s;
}

double cm_cost(const std::vector<CmSample>& samples) {
    if (samples.empty())
        throw std::invalid_argument("cm_cost: empty sample list");
    double acc = 0.0;
    for (const CmSample& s : samples)
        acc += s.e * s.e;
    return acc / static_cast<double>(samples.size());
}

Eigen::MatrixXcd grad_T(const CmSample& s, const JioState& st) {
    return 2.0 * s.e * std::conj(s.y) * s.x * st.w_bar.adjoint();
}

Eigen::VectorXcd grad_w(const CmSample& s, const JioState& st) {
    (void)st;
    return 2.0 * s.e * std::conj(s.y) * s.x_bar;
}

JioState update_T(const JioState& st, const CmSample& s) {
    check_unit_a0(st.a0, "update_T");
    // Data with the constraint direction removed: a0'(x_perp) = 0, so the
    // rank-one increment cannot move a_bar = T'a0.
    const Eigen::VectorXcd x_perp = s.x - st.a0 * st.a0.dot(s.x);
    JioState out = st;
    out.T -= st.mu_T * s.e * std::conj(s.y) * x_perp * st.w_bar.adjoint();
    out.a_bar = out.T.adjoint() * st.a0;
    return out;
}

JioState update_w(const JioState& st, const CmSample& s) {
    const double ab2 = st.a_bar.squaredNorm();
    if (ab2 < 1e-24)
        throw std::runtime_error("update_w: constraint image a_bar is zero");
    const Eigen::VectorXcd xb_perp =
        s.x_bar - st.a_bar * (st.a_bar.dot(s.x_bar) / ab2);
    JioState out = st;
    out.w_bar -= st.mu_w * s.e * std::conj(s.y) * xb_perp;
    return out;
}

Eigen::MatrixXcd gram_schmidt(const Eigen::MatrixXcd& T) {
    Eigen::MatrixXcd Q = T;
    const auto r = Q.cols();
    for (Eigen::Index l = 0; l < r; ++l) {
        const double before = Q.col(l).norm();
        for (Eigen::Index j = 0; j < l; ++j)
            Q.col(l) -= Q.col(j).dot(Q.col(l)) * Q.col(j);
        const double after = Q.col(l).norm();
        if (!(after > 1e-12 * std::max(before, 1e-300)) ||
            !std::isfinite(after))
            throw std::runtime_error(
                "gram_schmidt: near-dependent columns (column " +
                std::to_string(l) + ")");
        Q.col(l) /= after;
    }
    return Q;
}

std::pair<JioState, CmSample> jio_step(const JioState& st,
                                       const Eigen::VectorXcd& x) {
    const CmSample s = forward(st, x);
    JioState next = update_T(st, s);
    if (next.gs_enabled) {
        next.T = gram_schmidt(next.T);
        next.a_bar = next.T.adjoint() * next.a0;
        // Reformation changes a_bar, so restore the constraint exactly by
        // rescaling w_bar (direction preserved).
        const std::complex<double> c = next.w_bar.dot(next.a_bar);
        if (!(std::abs(c) > 1e-12) || !std::isfinite(std::abs(c)))
            throw std::runtime_error(
                "jio_step: constraint response vanished after reformation");
        next.w_bar /= std::conj(c);
    }
    next = update_w(next, s);
    return {next, s};
}

namespace {

// Shared piece of both closed forms: loaded sample statistics
//   R = (1/N) sum |y_i|^2 v_i v_i' + loading*trace/dim * I
//   p = (1/N) sum conj(y_i) v_i
// over rows of v with per-row outputs y.
void weighted_stats(const Eigen::MatrixXcd& v, const Eigen::VectorXcd& y,
                    double loading, Eigen::MatrixXcd& R, Eigen::VectorXcd& p) {
    const auto n = v.rows();
    const auto dim = v.cols();
    R = Eigen::MatrixXcd::Zero(dim, dim);
    p = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXcd vi = v.row(i).transpose();
        R.noalias() += std::norm(y[i]) * vi * vi.adjoint();
        p.noalias() += std::conj(y[i]) * vi;
    }
    R /= static_cast<double>(n);
    p /= static_cast<double>(n);
    R += loading * (R.trace().real() / static_cast<double>(dim)) *
         Eigen::MatrixXcd::Identity(dim, dim);
}

} // namespace

Eigen::VectorXcd closed_form_w(const Eigen::MatrixXcd& x, const JioState& st,
                               double loading) {
    const auto r = st.T.cols();
    if (x.cols() != st.T.rows())
        throw std::invalid_argument("closed_form_w: snapshot size mismatch");
    if (x.rows() < r)
        throw std::invalid_argument("closed_form_w: block shorter than rank");

    const Eigen::MatrixXcd xb = x * st.T.conjugate();  // rows are (T'x_i)^T
    const Eigen::VectorXcd y = xb * st.w_bar.conjugate();
    Eigen::MatrixXcd R;
    Eigen::VectorXcd p;
    weighted_stats(xb, y, loading, R, p);

    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(R);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("closed_form_w: singular reduced covariance");
    const Eigen::VectorXcd Rp = ldlt.solve(p);
    const Eigen::VectorXcd Ra = ldlt.solve(st.a_bar);
    const std::complex<double> c = st.a_bar.dot(Rp);
    const double d = st.a_bar.dot(Ra).real();
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::runtime_error("closed_form_w: degenerate constraint scale");
    Eigen::VectorXcd w = Rp - ((c - 1.0) / d) * Ra;
    if (!w.allFinite())
        throw std::runtime_error("closed_form_w: non-finite solution");
    return w;
}

Eigen::MatrixXcd closed_form_T(const Eigen::MatrixXcd& x, const JioState& st,
                               int window, double loading) {
    const auto m = st.T.rows();
    const auto r = st.T.cols();
    if (x.cols() != m)
        throw std::invalid_argument("closed_form_T: snapshot size mismatch");
    if (window < r)
        throw std::invalid_argument("closed_form_T: window smaller than rank");
    if (x.rows() < m)
        throw std::invalid_argument("closed_form_T: block shorter than m");

    // Iterate covariance of w_bar.  A lone w_bar gives a rank-1 matrix, so
    // average over `window` SG iterates grown from the current state; the
    // short continuation keeps every iterate close to w_bar, which anchors
    // the solution to the caller's weights (w_bar' Rw^-1 w_bar stays ~1).
    Eigen::MatrixXcd Rw = st.w_bar * st.w_bar.adjoint();
    int collected = 1;
    {
        JioState cur = st;
        cur.gs_enabled = false;
        const Eigen::Index steps =
            std::min<Eigen::Index>(window - 1, x.rows());
        for (Eigen::Index i = 0; i < steps; ++i) {
            cur = jio_step(cur, x.row(i).transpose()).first;
            Rw.noalias() += cur.w_bar * cur.w_bar.adjoint();
            ++collected;
        }
    }
    Rw /= static_cast<double>(collected);
    Rw += loading * (Rw.trace().real() / static_cast<double>(r)) *
          Eigen::MatrixXcd::Identity(r, r);

    // Full-size statistics weighted by the frozen outputs of the caller's
    // filter pair.
    const Eigen::VectorXcd y =
        (x * st.T.conjugate()) * st.w_bar.conjugate();
    Eigen::MatrixXcd R;
    Eigen::VectorXcd p;
    weighted_stats(x, y, loading, R, p);

    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(R);
    const Eigen::LDLT<Eigen::MatrixXcd> ldlt_w(Rw);
    if (ldlt.info() != Eigen::Success || ldlt_w.info() != Eigen::Success)
        throw std::runtime_error("closed_form_T: singular covariance");

    const Eigen::VectorXcd Rp = ldlt.solve(p);
    const Eigen::VectorXcd Ra = ldlt.solve(st.a0);
    const Eigen::VectorXcd rw = ldlt_w.solve(st.w_bar);
    const double s1 = st.w_bar.dot(rw).real();
    const std::complex<double> c = st.a0.dot(Rp);
    const double d = st.a0.dot(Ra).real();
    if (!(d > 0.0) || !(s1 > 0.0) || !std::isfinite(d) || !std::isfinite(s1))
        throw std::runtime_error("closed_form_T: degenerate constraint scale");

    const std::complex<double> chi = (s1 * c - 1.0) / (s1 * d);
    Eigen::MatrixXcd T = (Rp - chi * Ra) * rw.adjoint();
    if (!T.allFinite())
        throw std::runtime_error("closed_form_T: non-finite solution");
    return T;
}

} // namespace jiobeam
