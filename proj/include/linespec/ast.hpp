#pragma once

#include "linespec/types.hpp"

namespace linespec {

/// ADMM settings for the semidefinite form of the atomic-norm denoiser.
///
/// `rho` is a dimensionless penalty weight: internally the solver works on
/// the unit-norm-scaled problem and multiplies rho by the regularization
/// ratio tau/||y||, which keeps one default usable across the whole tau
/// range. `over_relax` in (1, 2) blends the constraint block into the cone
/// update; 1.0 recovers the textbook iteration.
struct AdmmConfig {
  double rho = 2.0;
  double eps_abs = 1e-4;
  double eps_rel = 1e-4;
  int max_iters = 5000;
  double over_relax = 1.8;
  /// Convergence additionally requires sup_f |<q_hat, a(f)>| <= 1 + feas_tol
  /// on a 2^14 grid; residual-only termination is not enough for the dual
  /// vector to be usable.
  double feas_tol = 1e-2;
};

/// Solution of the atomic-norm soft-thresholding problem
///   min_z 1/2 ||y - z||^2 + tau ||z||_A.
struct AstSolution {
  Samples x_hat;          // denoised signal
  CVec u;                 // first row of the Toeplitz block
  double t = 0.0;         // scalar block
  CVec q_hat;             // dual vector, (y - x_hat)/tau
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;     // 1/2||y-x||^2 + tau/2 (t + u_1)
  bool converged = false;
  double best_merit = 0.0;    // best objective among near-feasible iterates
  double dual_sup = 0.0;      // sup |<q_hat, a(f)>| on the feasibility grid
};

/// Hermitian Toeplitz matrix with u as its first row; the diagonal is forced
/// real (imaginary part of u[0] dropped).
CMat toeplitz_from_vector(const CVec& u);

/// Projection onto the positive semidefinite cone: eigendecomposition with
/// negative eigenvalues clipped to zero. Symmetrizes first.
/// Throws numeric_error if the eigensolver fails.
CMat psd_project(const CMat& M);

/// Solve AST by ADMM on the equivalent SDP
///   min 1/2||y-z||^2 + tau/2 (t + u_1)  s.t.  [[Toep(u), z],[z*, t]] >= 0.
/// Alternates closed-form (x, u, t) updates, a PSD cone projection of the
/// block plus scaled dual, and dual ascent. Reaching max_iters returns the
/// current iterate flagged non-converged.
/// Throws std::invalid_argument on tau <= 0 or non-finite input.
AstSolution solve_ast(const Samples& y, double tau, const AdmmConfig& cfg = {});

/// Atomic norm of x: the same ADMM with the x block pinned, minimizing
/// (t + u_1)/2 over the semidefinite constraint.
double atomic_norm(const Samples& x, const AdmmConfig& cfg = {});

/// tau = eta * sigma * sqrt(n log n), natural log. Requires eta > 1.
double choose_tau(double sigma, int n, double eta);

/// Noise level estimate: forward-backward autocorrelation matrix of
/// prediction order floor(n/3), eigenvalues sorted ascending, square root of
/// the mean of the lowest quarter. Requires n >= 12.
double estimate_noise_sigma(const Samples& y);

/// Forward-backward (modified covariance) autocorrelation estimate of order
/// `order`: the (order+1)x(order+1) normalized Gram matrix of the windowed
/// data segments. Shared by the noise heuristic and the subspace baselines.
CMat fb_autocorrelation(const CVec& y, int order);

}  // namespace linespec
