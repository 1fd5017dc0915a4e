#pragma once

#include <Eigen/Dense>

#include <complex>

namespace jiobeam {

// Full-rank constrained adaptive beamformer state.  a0 is the unit-norm
// constraint vector toward the presumed desired direction; every update
// keeps w'a0 = 1 (' denotes conjugate transpose throughout).
//
// Snapshots fed to these filters are expected in the same frame as a0:
// when a0 is the normalized steering vector, scale raw array snapshots
// by 1/sqrt(m) so the desired component has unit gain under w = a0.
struct FullRankState {
    Eigen::VectorXcd w;   // m weights
    double mu = 0.0;      // SG step size
    Eigen::VectorXcd a0;  // unit-norm constraint vector
};

// w(0) = a0 / (a0'a0): satisfies the constraint at startup and acts as a
// matched filter.  Throws std::invalid_argument unless a0 has unit norm
// (tolerance 1e-6) and mu >= 0.
FullRankState init_fullrank(const Eigen::VectorXcd& a0, double mu);

// Beamformer output w'x.  Throws std::invalid_argument on size mismatch.
std::complex<double> fullrank_output(const FullRankState& st,
                                     const Eigen::VectorXcd& x);

// Constant-modulus SG update with the constraint direction projected
// out:  w <- w - mu*e*conj(y)*[I - a0 a0'/(a0'a0)] x, where y = w'x and
// e = |y|^2 - 1 are evaluated before the update.  w'a0 is invariant.
FullRankState ccm_sg_step(const FullRankState& st, const Eigen::VectorXcd& x);

// Minimum-variance SG update with affine re-projection onto the
// constraint plane:  w <- P(w - mu*conj(y)*x) + a0/(a0'a0),
// P = I - a0 a0'/(a0'a0).  Restores w'a0 = 1 exactly every step.
FullRankState cmv_sg_step(const FullRankState& st, const Eigen::VectorXcd& x);

// Block-based constant-modulus reference solver.  Starting from init_w,
// performs n_iters fixed-point evaluations of
//   w <- R^-1 [p - ((c - 1)/d) a0],   c = a0'R^-1 p,  d = a0'R^-1 a0,
// with R = (1/N) sum |y(i)|^2 x(i)x(i)' + loading*trace/m*I and
// p = (1/N) sum conj(y(i)) x(i) recomputed from the current iterate's
// outputs.  The constraint w'a0 = 1 holds at every iterate.  x holds one
// snapshot per row.  n_iters = 0 returns init_w unchanged.
// Throws std::invalid_argument on bad sizes or a block shorter than m,
// std::runtime_error when the loaded covariance is not invertible.
FullRankState ccm_closed_form(const Eigen::MatrixXcd& x,
                              const Eigen::VectorXcd& a0,
                              const Eigen::VectorXcd& init_w, int n_iters,
                              double loading = 1e-6);

} // namespace jiobeam
