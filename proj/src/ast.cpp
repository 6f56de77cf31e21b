#include "linespec/ast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include "linespec/errors.hpp"
#include "linespec/trigpoly.hpp"

namespace linespec {

namespace {

constexpr int kFeasGrid = 16384;  // 2^14, dual feasibility grid

// Positive-part reconstruction from a LAPACK Hermitian eigensolve. Returns
// false if LAPACK reports failure.
bool psd_positive_part(const CMat& H, CMat& out) {
  const int n = static_cast<int>(H.rows());
  CMat A = H;
  std::vector<double> w(n);
  CMat vecs(n, n);
  std::vector<lapack_int> isuppz(2 * std::max(1, n));
  lapack_int found = 0;
  const double abstol = LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', 'V', 'L', n,
      reinterpret_cast<lapack_complex_double*>(A.data()), n,
      0.0, std::numeric_limits<double>::max(), 0, 0, abstol, &found, w.data(),
      reinterpret_cast<lapack_complex_double*>(vecs.data()), n, isuppz.data());
  if (info != 0) {
    // zheevr occasionally fails on hard cases; zheevd is the sturdier path.
    A = H;
    std::vector<double> wd(n);
    info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                          reinterpret_cast<lapack_complex_double*>(A.data()), n,
                          wd.data());
    if (info != 0) return false;
    found = 0;
    for (int i = 0; i < n; ++i)
      if (wd[i] > 0.0) { vecs.col(found) = A.col(i); w[found] = wd[i]; ++found; }
  }
  if (found == 0) {
    out.setZero(n, n);
    return true;
  }
  CMat scaled = vecs.leftCols(found);
  for (int i = 0; i < found; ++i) scaled.col(i) *= std::sqrt(w[i]);
  out.noalias() = scaled * scaled.adjoint();
  return true;
}

double sup_dual_abs(const CVec& q) {
  return grid_sup_abs(TrigPoly{q}, kFeasGrid);
}

// Per-diagonal averages of the top-left n x n block of V; the tau term lands
// on the diagonal entry only.
void toeplitz_average(const CMat& V, double tau_term, CVec& u) {
  const int n = static_cast<int>(u.size());
  for (int d = 0; d < n; ++d) {
    cplx s = 0.0;
    for (int r = 0; r + d < n; ++r) s += V(r, r + d);
    u(d) = s / static_cast<double>(n - d);
  }
  u(0) = u(0).real() - tau_term;  // keep the diagonal real
}

struct AdmmResult {
  CVec x;
  CVec u;
  double t = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool residuals_ok = false;
  bool dual_feasible = false;
  double best_merit = std::numeric_limits<double>::infinity();
  double dual_sup = 0.0;
};

// Core ADMM on the unit-scale problem. When `pinned` is set the x block is
// held at y and only (u, t) are free.
AdmmResult run_admm(const CVec& y, double tau, const AdmmConfig& cfg, bool pinned,
                    bool check_dual_feasibility) {
  const int n = static_cast<int>(y.size());
  const int N = n + 1;
  const double rho = 0.25 * cfg.rho / 2.0 * std::clamp(tau, 1e-6, 10.0);
  const double alpha = cfg.over_relax;

  CMat Z = CMat::Zero(N, N), L = CMat::Zero(N, N);
  CMat B(N, N), Bhat(N, N), R(N, N), Zold(N, N), V(N, N);
  AdmmResult res;
  res.x = pinned ? y : CVec::Zero(n);
  res.u = CVec::Zero(n);

  const double sqrtN = std::sqrt(static_cast<double>(N));
  auto merit = [&](const CVec& x, const CVec& u, double t) {
    return 0.5 * (y - x).squaredNorm() + 0.5 * tau * (t + u(0).real());
  };

  for (int it = 1; it <= cfg.max_iters; ++it) {
    V = Z - L;
    res.t = V(n, n).real() - tau / (2.0 * rho);
    if (!pinned)
      res.x = (y + 2.0 * rho * V.block(0, n, n, 1)) / (1.0 + 2.0 * rho);
    toeplitz_average(V, tau / (2.0 * rho * n), res.u);

    B.topLeftCorner(n, n) = toeplitz_from_vector(res.u);
    B.block(0, n, n, 1) = res.x;
    B.block(n, 0, 1, n) = res.x.adjoint();
    B(n, n) = res.t;

    Bhat = alpha * B + (1.0 - alpha) * Z;
    Zold = Z;
    CMat target = Bhat + L;
    if (!psd_positive_part(0.5 * (target + target.adjoint()), Z))
      throw numeric_error("solve_ast: Hermitian eigensolver failed");
    R = Bhat - Z;
    L += R;

    res.iterations = it;
    res.primal_residual = R.norm();
    res.dual_residual = rho * (Z - Zold).norm();
    const double eps_pri = sqrtN * cfg.eps_abs +
                           cfg.eps_rel * std::max(B.norm(), Z.norm());
    const double eps_dual = sqrtN * cfg.eps_abs + cfg.eps_rel * rho * L.norm();
    res.residuals_ok =
        res.primal_residual <= eps_pri && res.dual_residual <= eps_dual;

    if (res.residuals_ok) {
      res.best_merit = std::min(res.best_merit, merit(res.x, res.u, res.t));
      if (!check_dual_feasibility) break;
      // The dual-sup evaluation costs one FFT; only re-check periodically.
      if (it % 25 == 0 || it == cfg.max_iters) {
        res.dual_sup = sup_dual_abs((y - res.x) / tau);
        res.dual_feasible = res.dual_sup <= 1.0 + cfg.feas_tol;
        if (res.dual_feasible) break;
      }
    }
  }
  if (check_dual_feasibility && !res.dual_feasible)
    res.dual_sup = sup_dual_abs((y - res.x) / tau);
  if (!std::isfinite(res.best_merit))
    res.best_merit = merit(res.x, res.u, res.t);
  return res;
}

}  // namespace

CMat toeplitz_from_vector(const CVec& u) {
  const int n = static_cast<int>(u.size());
  CMat T(n, n);
  for (int r = 0; r < n; ++r) {
    T(r, r) = u(0).real();
    for (int c = r + 1; c < n; ++c) {
      T(r, c) = u(c - r);
      T(c, r) = std::conj(u(c - r));
    }
  }
  return T;
}

CMat psd_project(const CMat& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("psd_project: not square");
  CMat H = 0.5 * (M + M.adjoint());
  CMat out;
  if (!psd_positive_part(H, out))
    throw numeric_error("psd_project: eigensolver did not converge");
  return out;
}

AstSolution solve_ast(const Samples& y, double tau, const AdmmConfig& cfg) {
  const int n = y.n();
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("solve_ast: n must be odd and >= 3");
  if (!(tau > 0.0)) throw std::invalid_argument("solve_ast: tau must be positive");
  if (!y.data().allFinite())
    throw std::invalid_argument("solve_ast: non-finite input");

  AstSolution sol;
  const double scale = y.norm();
  if (scale == 0.0) {
    sol.x_hat = Samples::zeros(n);
    sol.u = CVec::Zero(n);
    sol.q_hat = CVec::Zero(n);
    sol.converged = true;
    sol.dual_sup = 0.0;
    return sol;
  }

  // Solve on the unit-norm problem; the iteration is exactly equivariant
  // under joint scaling of (y, tau).
  AdmmResult r = run_admm(y.data() / scale, tau / scale, cfg, false, true);

  sol.x_hat = Samples(scale * r.x);
  sol.u = scale * r.u;
  sol.t = scale * r.t;
  sol.q_hat = (y.data() - sol.x_hat.data()) / tau;
  sol.iterations = r.iterations;
  sol.primal_residual = scale * r.primal_residual;
  sol.dual_residual = scale * r.dual_residual;
  sol.objective = 0.5 * (y.data() - sol.x_hat.data()).squaredNorm() +
                  0.5 * tau * (sol.t + sol.u(0).real());
  sol.best_merit = scale * scale * r.best_merit;
  sol.converged = r.residuals_ok && r.dual_feasible;
  sol.dual_sup = r.dual_sup;
  return sol;
}

double atomic_norm(const Samples& x, const AdmmConfig& cfg) {
  const int n = x.n();
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("atomic_norm: n must be odd and >= 3");
  if (!x.data().allFinite())
    throw std::invalid_argument("atomic_norm: non-finite input");
  const double scale = x.norm();
  if (scale == 0.0) return 0.0;
  // Pinned-x variant with tau = 1: the objective reduces to (t + u_1)/2.
  AdmmResult r = run_admm(x.data() / scale, 1.0, cfg, true, false);
  return scale * 0.5 * (r.t + r.u(0).real());
}

double choose_tau(double sigma, int n, double eta) {
  if (sigma < 0) throw std::invalid_argument("choose_tau: sigma < 0");
  if (n < 3) throw std::invalid_argument("choose_tau: n too small");
  if (!(eta > 1.0)) throw std::invalid_argument("choose_tau: eta must exceed 1");
  return eta * sigma * std::sqrt(n * std::log(static_cast<double>(n)));
}

CMat fb_autocorrelation(const CVec& y, int order) {
  const int n = static_cast<int>(y.size());
  const int p = order;
  if (p < 1 || p >= n)
    throw std::invalid_argument("fb_autocorrelation: order out of range");
  const int rows = n - p;
  // Forward rows are reversed windows, backward rows conjugated windows.
  CMat X(2 * rows, p + 1);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c <= p; ++c) {
      X(i, c) = y(i + p - c);
      X(rows + i, c) = std::conj(y(i + c));
    }
  }
  return (X.adjoint() * X) / static_cast<double>(2 * rows);
}

double estimate_noise_sigma(const Samples& y) {
  const int n = y.n();
  if (n < 12) throw std::invalid_argument("estimate_noise_sigma: n < 12");
  const int p = n / 3;
  CMat R = fb_autocorrelation(y.data(), p);
  Eigen::SelfAdjointEigenSolver<CMat> es(R, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("estimate_noise_sigma: eigensolver failed");
  const auto& evals = es.eigenvalues();  // ascending
  const int count = (p + 1 + 3) / 4;     // ceil((p+1)/4)
  double acc = 0.0;
  for (int i = 0; i < count; ++i) acc += std::max(0.0, evals(i));
  return std::sqrt(acc / count);
}

}  // namespace linespec
