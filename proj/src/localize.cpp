#include "linespec/localize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

#include "linespec/spectrum.hpp"

namespace linespec {

namespace {

// Maximize |Q(f)|^2 by golden section on [lo, hi] down to width 1e-12.
double golden_refine(const TrigPoly& q, double lo, double hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  auto val = [&](double f) { return std::norm(q.eval(f)); };
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = val(c), fd = val(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a); fc = val(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a); fd = val(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<TorusFreq> localize_frequencies(const TrigPoly& q_hat, int n,
                                            const LocalizeOptions& opts) {
  const int grid = std::max(opts.grid_floor, opts.grid_per_n * n);
  std::vector<cplx> vals = eval_trig_poly(q_hat, grid);
  std::vector<double> mag(grid);
  double sup = 0.0;
  for (int i = 0; i < grid; ++i) {
    mag[i] = std::abs(vals[i]);
    sup = std::max(sup, mag[i]);
  }
  if (sup > 1.0 + opts.feas_tol)
    throw std::invalid_argument("localize_frequencies: dual vector infeasible");

  // Circular local maxima at or above the threshold, refined on the
  // bracketing cells.
  struct Peak { double f; double value; };
  std::vector<Peak> peaks;
  for (int i = 0; i < grid; ++i) {
    double prev = mag[(i + grid - 1) % grid];
    double next = mag[(i + 1) % grid];
    if (mag[i] < opts.peak_threshold) continue;
    if (mag[i] > prev && mag[i] >= next) {
      double f0 = static_cast<double>(i) / grid;
      double f = golden_refine(q_hat, f0 - 1.0 / grid, f0 + 1.0 / grid);
      peaks.push_back({f, std::abs(q_hat.eval(f))});
    }
  }

  // Merge refined maxima closer than 1/(4n), keeping the larger |Q|.
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.value > b.value; });
  const double merge_radius = 1.0 / (4.0 * n);
  std::vector<Peak> kept;
  for (const auto& p : peaks) {
    bool merged = false;
    for (const auto& k : kept) {
      if (torus_distance(TorusFreq(p.f), TorusFreq(k.f)) < merge_radius) {
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(p);
  }

  std::vector<TorusFreq> out;
  out.reserve(kept.size());
  for (const auto& p : kept) out.emplace_back(p.f);
  std::sort(out.begin(), out.end());
  return out;
}

AtomicDecomposition debias_amplitudes(const Samples& y,
                                      const std::vector<TorusFreq>& freqs) {
  const int n = y.n();
  const int k = static_cast<int>(freqs.size());
  if (k == 0) return {};
  if (k > n)
    throw std::invalid_argument("debias_amplitudes: more frequencies than samples");
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      if (torus_distance(freqs[p], freqs[q]) < 1e-13)
        throw std::invalid_argument("debias_amplitudes: duplicate frequencies");

  CMat U(n, k);
  for (int l = 0; l < k; ++l) U.col(l) = atom_vector(freqs[l], n).data();
  Eigen::ColPivHouseholderQR<CMat> qr(U);
  if (qr.rank() < k)
    throw std::invalid_argument("debias_amplitudes: rank-deficient system");
  CVec alpha = qr.solve(y.data());

  AtomicDecomposition out;
  out.entries.reserve(k);
  for (int l = 0; l < k; ++l) out.entries.push_back({freqs[l], alpha(l)});
  return out;
}

std::pair<AtomicDecomposition, AstSolution> ast_pipeline(
    const Samples& y, double eta, const AdmmConfig& cfg,
    const LocalizeOptions& opts) {
  const int n = y.n();
  if (y.norm() == 0.0) {
    AstSolution sol;
    sol.x_hat = Samples::zeros(n);
    sol.u = CVec::Zero(n);
    sol.q_hat = CVec::Zero(n);
    sol.converged = true;
    return {AtomicDecomposition{}, std::move(sol)};
  }
  double sigma = estimate_noise_sigma(y);
  double tau = choose_tau(sigma, n, eta);
  // A perfectly predictable signal can drive the estimate to zero; keep tau
  // strictly positive.
  double tau_floor = 1e-8 * y.norm();
  tau = std::max(tau, tau_floor);

  AstSolution sol = solve_ast(y, tau, cfg);
  std::vector<TorusFreq> freqs =
      localize_frequencies(TrigPoly{sol.q_hat}, n, opts);
  AtomicDecomposition decomp = debias_amplitudes(y, freqs);
  return {std::move(decomp), std::move(sol)};
}

}  // namespace linespec
