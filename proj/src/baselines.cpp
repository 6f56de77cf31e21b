#include "linespec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "linespec/ast.hpp"
#include "linespec/errors.hpp"
#include "linespec/localize.hpp"

namespace linespec {

namespace {

// Roots of a complex polynomial sum_i c_i z^i (c.back() != 0) via the
// companion matrix.
std::vector<cplx> poly_roots(const CVec& c) {
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && std::abs(c(deg)) == 0.0) --deg;
  if (deg < 1) return {};
  CMat comp = CMat::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c(i) / c(deg);
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  if (es.info() != Eigen::Success)
    throw numeric_error("poly_roots: companion eigensolver failed");
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

TorusFreq freq_from_root(const cplx& z) {
  return TorusFreq(std::arg(z) / (2.0 * std::numbers::pi));
}

// Rectangular Toeplitz arrangement of the samples: rows L, cols n-L+1,
// T(r, c) = x[r - c + (cols-1)], constant along diagonals.
CMat toeplitz_data_matrix(const CVec& x, int rows) {
  const int n = static_cast<int>(x.size());
  const int cols = n - rows + 1;
  CMat T(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) T(r, c) = x(r - c + cols - 1);
  return T;
}

CVec toeplitz_diagonal_average(const CMat& T, int n) {
  const int rows = static_cast<int>(T.rows());
  const int cols = static_cast<int>(T.cols());
  CVec x(n);
  for (int idx = 0; idx < n; ++idx) {
    // entries with r - c + cols - 1 == idx
    cplx acc = 0.0;
    int count = 0;
    int d = idx - (cols - 1);  // r - c
    for (int c = std::max(0, -d); c < cols && c + d < rows; ++c) {
      if (c + d < 0) continue;
      acc += T(c + d, c);
      ++count;
    }
    x(idx) = acc / static_cast<double>(count);
  }
  return x;
}

}  // namespace

std::vector<TorusFreq> music_estimate(const Samples& y, const SubspaceConfig& cfg) {
  const int n = y.n();
  const int M = cfg.order > 0 ? cfg.order : n / 3;
  const int k = cfg.k;
  if (k < 0 || k >= M)
    throw std::invalid_argument("music_estimate: need 0 <= k < order");
  if (M >= n) throw std::invalid_argument("music_estimate: order too large");
  if (k == 0) return {};

  CMat R = fb_autocorrelation(y.data(), M);
  Eigen::SelfAdjointEigenSolver<CMat> es(R);
  if (es.info() != Eigen::Success)
    throw numeric_error("music_estimate: eigensolver failed");

  // Noise subspace: eigenvectors of the M+1-k smallest eigenvalues
  // (ascending order), projector C = En En^H.
  const int dim = M + 1;
  CMat En = es.eigenvectors().leftCols(dim - k);
  CMat C = En * En.adjoint();

  // Null-spectrum polynomial D(z) = sum_{d=-M..M} s_d z^d from the diagonal
  // sums of C, shifted by z^M to the degree-2M root polynomial. The signal
  // eigenvectors of R have entries e^{+i 2 pi f a}, so the on-circle roots
  // sit at e^{+i 2 pi f_l} and angles/2pi are the frequencies.
  CVec coeff(2 * M + 1);
  for (int d = -M; d <= M; ++d) {
    cplx s = 0.0;
    for (int r = std::max(0, -d); r < dim && r + d < dim; ++r) s += C(r, r + d);
    coeff(d + M) = s;
  }

  std::vector<cplx> roots = poly_roots(coeff);
  std::vector<cplx> inside;
  for (const auto& z : roots)
    if (std::abs(z) <= 1.0) inside.push_back(z);
  if (static_cast<int>(inside.size()) < k)
    throw numeric_error("music_estimate: too few roots inside the unit disk");
  std::sort(inside.begin(), inside.end(), [](const cplx& a, const cplx& b) {
    double da = std::abs(1.0 - std::abs(a)), db = std::abs(1.0 - std::abs(b));
    if (da != db) return da < db;
    return std::abs(a) > std::abs(b);
  });

  std::vector<TorusFreq> freqs;
  freqs.reserve(k);
  for (int i = 0; i < k; ++i) freqs.push_back(freq_from_root(inside[i]));
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

Samples cadzow_denoise(const Samples& y, int k, int max_rounds) {
  const int n = y.n();
  if (k < 0 || k > n / 2)
    throw std::invalid_argument("cadzow_denoise: need 0 <= k <= n/2");
  if (k == 0) return Samples::zeros(n);

  const int rows = n / 2 + 1;
  CVec x = y.data();
  for (int round = 0; round < max_rounds; ++round) {
    CMat T = toeplitz_data_matrix(x, rows);
    Eigen::BDCSVD<CMat> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CMat Tk = svd.matrixU().leftCols(k) *
              svd.singularValues().head(k).asDiagonal() *
              svd.matrixV().leftCols(k).adjoint();
    CVec next = toeplitz_diagonal_average(Tk, n);
    double change = (next - x).norm() / std::max(1e-300, x.norm());
    x = next;
    if (change <= 1e-8) break;
  }
  return Samples(std::move(x));
}

std::vector<TorusFreq> annihilating_freqs(const Samples& x, int k) {
  const int n = x.n();
  if (k < 0 || k > n / 2)
    throw std::invalid_argument("annihilating_freqs: need 0 <= k <= n/2");
  if (k == 0) return {};

  // Convolution system: rows j = k..n-1 of sum_c h_c x[j - c] = 0, i.e. the
  // (n-k) x (k+1) Toeplitz matrix A(r, c) = x[k + r - c].
  CMat A(n - k, k + 1);
  for (int r = 0; r < n - k; ++r)
    for (int c = 0; c <= k; ++c) A(r, c) = x.data()(k + r - c);

  Eigen::BDCSVD<CMat> svd(A, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) throw numeric_error("annihilating_freqs: zero data matrix");
  // Exactly one-dimensional null space expected: sigma_k tiny, sigma_{k-1}
  // not. The filter is ambiguous otherwise.
  if (k >= 2 && sv(k - 1) <= 1e-10 * sv(0))
    throw numeric_error("annihilating_freqs: null space dimension > 1");
  CVec h = svd.matrixV().col(k);

  // H(z) = sum_c h_c z^{-c}; roots of sum_c h_c w^{k-c} are the signal poles.
  CVec poly(k + 1);
  for (int c = 0; c <= k; ++c) poly(k - c) = h(c);
  std::vector<cplx> roots = poly_roots(poly);
  if (static_cast<int>(roots.size()) != k)
    throw numeric_error("annihilating_freqs: degenerate filter polynomial");

  std::vector<TorusFreq> freqs;
  freqs.reserve(k);
  for (const auto& z : roots) freqs.push_back(freq_from_root(z));
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

AtomicDecomposition cadzow_pipeline(const Samples& y, int k) {
  Samples denoised = cadzow_denoise(y, k);
  std::vector<TorusFreq> freqs;
  try {
    freqs = annihilating_freqs(denoised, k);
  } catch (const numeric_error&) {
    SubspaceConfig sc;
    sc.k = k;
    freqs = music_estimate(denoised, sc);
  }
  return debias_amplitudes(y, freqs);
}

}  // namespace linespec
