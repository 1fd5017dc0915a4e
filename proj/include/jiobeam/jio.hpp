#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace jiobeam {

// Jointly adapted reduced-rank beamformer: an m x r transformation T
// projects each snapshot to r dimensions, where a short weight vector
// w_bar forms the output y = w_bar' (T' x).  Both T and w_bar follow
// constant-modulus stochastic-gradient updates that keep the distortion-
// less response w_bar' (T' a0) = 1 toward the constraint vector a0.
//
// As in the full-rank filters, a0 is unit norm and snapshots are
// expected scaled to the same frame (raw array data divided by sqrt(m)).
struct JioState {
    Eigen::MatrixXcd T;      // m x r transformation
    Eigen::VectorXcd w_bar;  // r reduced-rank weights
    double mu_T = 0.0;       // step size for T
    double mu_w = 0.0;       // step size for w_bar
    Eigen::VectorXcd a0;     // unit-norm constraint vector (m)
    Eigen::VectorXcd a_bar;  // cached T' a0 (r)
    bool gs_enabled = false; // re-orthonormalize T each step
};

// One processed snapshot: projected data, output, and the constant-
// modulus error e = |y|^2 - 1.
struct CmSample {
    Eigen::VectorXcd x;      // snapshot (m)
    Eigen::VectorXcd x_bar;  // T' x (r)
    std::complex<double> y;  // w_bar' x_bar
    double e = 0.0;          // |y|^2 - 1
};

// Canonical start: T(0) = [I_r; 0], w_bar(0) = a_bar / ||a_bar||^2 with
// a_bar = T(0)' a0, so the constraint holds exactly at step zero.
// r = m is allowed and reproduces the full-rank filter.  Throws
// std::invalid_argument for r outside [1, m], a0 not unit norm, or an a0
// whose first r entries are all zero (constraint unsatisfiable here).
JioState init_state(const Eigen::VectorXcd& a0, int r, double mu_T,
                    double mu_w, bool gs);

// T' x.  Throws std::invalid_argument on size mismatch.
Eigen::VectorXcd project(const JioState& st, const Eigen::VectorXcd& x);

// Runs the snapshot through the current filter pair and packages the
// quantities reused by both gradient updates.
CmSample forward(const JioState& st, const Eigen::VectorXcd& x);

// Mean of e^2 over the samples.  Throws std::invalid_argument on empty.
double cm_cost(const std::vector<CmSample>& samples);

// Unconstrained constant-modulus gradients (the constraint terms are
// folded into update_T / update_w):
//   grad_T = 2 e conj(y) x w_bar',   grad_w = 2 e conj(y) x_bar.
// The directional-derivative convention: moving T by h*D changes the
// instantaneous cost at rate 2*Re<grad_T, D> (Frobenius inner product).
Eigen::MatrixXcd grad_T(const CmSample& s, const JioState& st);
Eigen::VectorXcd grad_w(const CmSample& s, const JioState& st);

// T <- T - mu_T e conj(y) [x - a0 (a0'x)] w_bar'.  With unit-norm a0 the
// bracket is orthogonal to a0, so a_bar = T'a0 is invariant; the cache
// is refreshed from the new T.  Throws std::invalid_argument unless a0
// has unit norm.
JioState update_T(const JioState& st, const CmSample& s);

// w_bar <- w_bar - mu_w e conj(y) [I - a_bar a_bar'/(a_bar'a_bar)] x_bar.
// Leaves w_bar' a_bar unchanged.  Throws std::runtime_error when a_bar
// is numerically zero.
JioState update_w(const JioState& st, const CmSample& s);

// Modified Gram-Schmidt with column normalization.  Column spans are
// preserved and the first output column is t1/||t1||.  Throws
// std::runtime_error when a column loses all but 1e-12 of its norm to
// the preceding ones (near-dependent set).
Eigen::MatrixXcd gram_schmidt(const Eigen::MatrixXcd& T);

// One full adaptation step: forward, T update, optional Gram-Schmidt
// reformation (followed by an exact constraint restore that rescales
// w_bar), then the w_bar update.  y and e are computed once, before any
// update, and shared by both.  Returns the new state and that sample.
std::pair<JioState, CmSample> jio_step(const JioState& st,
                                       const Eigen::VectorXcd& x);

// Block least-squares reference for w_bar with T frozen: solves the
// constrained constant-modulus normal equations over the block (one
// snapshot per row of x, caller's frame), with outputs y(i) taken from
// the current state.  The returned vector satisfies w'a_bar = 1 exactly.
// Throws std::invalid_argument for blocks shorter than r,
// std::runtime_error on a singular system.
Eigen::VectorXcd closed_form_w(const Eigen::MatrixXcd& x, const JioState& st,
                               double loading = 1e-6);

// Block least-squares reference for T with w_bar frozen.  The iterate
// covariance of w_bar (rank-1 on its own) is averaged over `window`
// stochastic-gradient iterates grown from the current state across the
// block's leading snapshots, which anchors the solution to the caller's
// w_bar.  The returned T satisfies w_bar' T' a0 = 1 exactly.  Throws
// std::invalid_argument when window < r or the block is shorter than m,
// std::runtime_error on singular systems.
Eigen::MatrixXcd closed_form_T(const Eigen::MatrixXcd& x, const JioState& st,
                               int window, double loading = 1e-6);

} // namespace jiobeam
