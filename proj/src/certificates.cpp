#include "linespec/certificates.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "linespec/errors.hpp"

namespace linespec {

namespace {

constexpr double kIllConditioned = 1e10;

TrigPoly fourier_derivative(const CVec& fourier, int order) {
  const int n = static_cast<int>(fourier.size());
  const int m = (n - 1) / 2;
  CVec b = fourier;
  for (int j = -m; j <= m; ++j) {
    cplx factor = std::pow(cplx(0.0, 2.0 * std::numbers::pi * j), order);
    b(j + m) *= factor;
  }
  return TrigPoly::from_fourier(b);
}

// Shared interpolation solve. `value_rhs` and `slope_rhs` are the k-vectors
// of node conditions Q(f_i) = value_rhs_i, Q'(f_i) = slope_rhs_i.
Certificate interpolate(CertificateKind kind, const std::vector<TorusFreq>& freqs,
                        const CVec& value_rhs, const CVec& slope_rhs, int n) {
  const int k = static_cast<int>(freqs.size());
  if (k == 0) throw std::invalid_argument("certificate: empty frequency set");

  KernelBasis basis = build_kernel(n);
  TrigPoly K = basis.kernel();
  TrigPoly K1 = basis.kernel_derivative(1);
  TrigPoly K2 = basis.kernel_derivative(2);

  // Scaled system in unknowns (alpha, n*beta): the derivative columns and
  // rows are divided by n to keep the blocks on one scale.
  const double s = static_cast<double>(n);
  CMat M(2 * k, 2 * k);
  CVec rhs(2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double d = freqs[i].value() - freqs[j].value();
      M(i, j) = K.eval(d);
      M(i, k + j) = K1.eval(d) / s;
      M(k + i, j) = K1.eval(d) / s;
      M(k + i, k + j) = K2.eval(d) / (s * s);
    }
    rhs(i) = value_rhs(i);
    rhs(k + i) = slope_rhs(i) / s;
  }

  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(2 * k - 1);
  if (!(smin > 0.0) || !std::isfinite(smax)) {
    std::ostringstream msg;
    msg << "certificate: singular interpolation system (cond="
        << (smin > 0 ? smax / smin : std::numeric_limits<double>::infinity())
        << ")";
    throw numeric_error(msg.str());
  }
  CVec sol = svd.solve(rhs);

  Certificate cert;
  cert.kind = kind;
  cert.freqs = freqs;
  cert.alpha = sol.head(k);
  cert.beta = sol.tail(k) / s;
  cert.condition_number = smax / smin;
  cert.inside_guarantee = n >= 257;

  CVec coeffs = CVec::Zero(n);
  for (int j = 0; j < k; ++j) {
    coeffs += std::conj(cert.alpha(j)) * K.shifted(freqs[j].value()).coeffs;
    coeffs += std::conj(cert.beta(j)) * K1.shifted(freqs[j].value()).coeffs;
  }
  cert.poly = TrigPoly{std::move(coeffs)};
  return cert;
}

}  // namespace

TrigPoly KernelBasis::kernel() const { return TrigPoly::from_fourier(k_coeffs); }

TrigPoly KernelBasis::kernel_derivative(int order) const {
  if (order < 1 || order > 3)
    throw std::invalid_argument("kernel_derivative: order must be 1..3");
  return fourier_derivative(k_coeffs, order);
}

KernelBasis build_kernel(int n) {
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("build_kernel: n must be odd and >= 5");
  KernelBasis basis;
  basis.n = n;
  basis.m = (n - 1) / 2;
  basis.half = basis.m / 2;  // floor; odd m pads into the length-n window
  const int h = basis.half;
  const double denom = (h + 1.0) * (h + 1.0);

  basis.g.resize(2 * h + 1);
  for (int l = -h; l <= h; ++l) basis.g(l + h) = (h + 1.0 - std::abs(l)) / denom;

  // K = G^2: discrete self-convolution of g, support |j| <= 2h <= m.
  basis.k_coeffs = CVec::Zero(n);
  const int m = basis.m;
  for (int j = -2 * h; j <= 2 * h; ++j) {
    double acc = 0.0;
    for (int l = std::max(-h, j - h); l <= std::min(h, j + h); ++l)
      acc += basis.g(l + h) * basis.g(j - l + h);
    basis.k_coeffs(j + m) = acc;
  }
  return basis;
}

Certificate build_sign_certificate(const std::vector<TorusFreq>& freqs,
                                   const CVec& v, int n) {
  const int k = static_cast<int>(freqs.size());
  if (static_cast<int>(v.size()) != k)
    throw std::invalid_argument("build_sign_certificate: |v| != |freqs|");
  for (int i = 0; i < k; ++i)
    if (std::abs(std::abs(v(i)) - 1.0) > 1e-9)
      throw std::invalid_argument("build_sign_certificate: v must be unimodular");
  Certificate cert =
      interpolate(CertificateKind::Sign, freqs, v, CVec::Zero(k), n);
  cert.v = v;
  return cert;
}

Certificate build_linear_certificate(const std::vector<TorusFreq>& freqs,
                                     const CVec& v, int n) {
  const int k = static_cast<int>(freqs.size());
  if (static_cast<int>(v.size()) != k)
    throw std::invalid_argument("build_linear_certificate: |v| != |freqs|");
  for (int i = 0; i < k; ++i)
    if (std::abs(std::abs(v(i)) - 1.0) > 1e-9)
      throw std::invalid_argument("build_linear_certificate: v must be unimodular");
  Certificate cert =
      interpolate(CertificateKind::Linear, freqs, CVec::Zero(k), v, n);
  cert.v = v;
  return cert;
}

Certificate build_selector_certificate(const std::vector<TorusFreq>& freqs,
                                       int j, int n) {
  const int k = static_cast<int>(freqs.size());
  if (j < 0 || j >= k)
    throw std::invalid_argument("build_selector_certificate: index out of range");
  CVec v = CVec::Zero(k);
  v(j) = 1.0;
  Certificate cert =
      interpolate(CertificateKind::Selector, freqs, v, CVec::Zero(k), n);
  cert.v = v;
  cert.selector_index = j;
  return cert;
}

CertificateReport verify_certificate(const Certificate& c, int n) {
  CertificateReport rep;
  rep.kind = c.kind;
  rep.n = n;
  rep.k = static_cast<int>(c.freqs.size());
  rep.inside_guarantee = c.inside_guarantee;
  rep.condition_number = c.condition_number;
  rep.ill_conditioned = c.condition_number > kIllConditioned;

  const double radius = 0.16 / n;
  TrigPoly Q = c.poly;
  TrigPoly Qd = Q.derivative();

  // Node interpolation defects.
  double defect = 0.0;
  for (int i = 0; i < rep.k; ++i) {
    double f = c.freqs[i].value();
    cplx qv = Q.eval(f);
    cplx qs = Qd.eval(f);
    switch (c.kind) {
      case CertificateKind::Sign:
        defect = std::max(defect, std::abs(qv - c.v(i)));
        defect = std::max(defect, std::abs(qs) / n);
        break;
      case CertificateKind::Linear:
        defect = std::max(defect, std::abs(qv));
        defect = std::max(defect, std::abs(qs - c.v(i)) / n);
        break;
      case CertificateKind::Selector:
        defect = std::max(defect, std::abs(qv - c.v(i)));
        defect = std::max(defect, std::abs(qs) / n);
        break;
    }
  }
  rep.interp_residual = defect;
  rep.interp_ok = defect <= 1e-8;

  // Global grid split into near / far.
  const int grid = 1 << 15;
  std::vector<cplx> vals = eval_trig_poly(Q, grid);
  auto nearest_node = [&](double f) {
    int best = -1;
    double bestd = 1.0;
    for (int i = 0; i < rep.k; ++i) {
      double d = torus_distance(TorusFreq(f), c.freqs[i]);
      if (d < bestd) { bestd = d; best = i; }
    }
    return std::pair<int, double>(best, bestd);
  };

  rep.sup_far = 0.0;
  for (int g = 0; g < grid; ++g) {
    double f = static_cast<double>(g) / grid;
    auto [idx, d] = nearest_node(f);
    if (d > radius) rep.sup_far = std::max(rep.sup_far, std::abs(vals[g]));
  }

  // Near-region quadratic fits on dense local grids. Distances below 0.01/n
  // are excluded from the ratio fits.
  const int local = 1024;
  double ca_fit = std::numeric_limits<double>::infinity();
  double cap_fit = 0.0;
  bool near_violation = false;
  for (int i = 0; i < rep.k; ++i) {
    double f0 = c.freqs[i].value();
    for (int s = -local; s <= local; ++s) {
      double d = radius * s / local;
      if (std::abs(d) < 0.01 / n) continue;
      double f = f0 + d;
      cplx qv = Q.eval(f);
      double nd2 = n * d * n * d;
      switch (c.kind) {
        case CertificateKind::Sign: {
          ca_fit = std::min(ca_fit, 2.0 * (1.0 - std::abs(qv)) / nd2);
          cap_fit = std::max(cap_fit, 2.0 * std::abs(qv - c.v(i)) / nd2);
          if (std::abs(qv) > 1.0 + 1e-12) near_violation = true;
          break;
        }
        case CertificateKind::Linear: {
          double dev = std::abs(qv - c.v(i) * d);
          ca_fit = std::min(ca_fit, 1.0);  // unused lower fit for linear
          cap_fit = std::max(cap_fit, 2.0 * dev / (n * d * d));
          break;
        }
        case CertificateKind::Selector: {
          double dev = (i == c.selector_index) ? std::abs(1.0 - qv) : std::abs(qv);
          cap_fit = std::max(cap_fit, dev / nd2);
          ca_fit = std::min(ca_fit, 1.0);
          break;
        }
      }
    }
  }
  rep.quad_ca = ca_fit;
  rep.quad_ca_prime = cap_fit;

  switch (c.kind) {
    case CertificateKind::Sign:
      rep.far_constant = 1.0 - rep.sup_far;  // C_b
      rep.far_margin = rep.far_constant;
      rep.far_ok = rep.sup_far < 1.0;
      rep.near_ok = !near_violation && ca_fit > 0.0 && std::isfinite(cap_fit);
      break;
    case CertificateKind::Linear:
      rep.far_constant = n * rep.sup_far;  // C_b^1
      rep.far_margin = 1.0 - rep.sup_far;
      rep.far_ok = std::isfinite(rep.far_constant);
      rep.near_ok = std::isfinite(cap_fit);
      break;
    case CertificateKind::Selector:
      rep.far_constant = rep.sup_far;  // C_2'
      rep.far_margin = 1.0 - rep.sup_far;
      rep.far_ok = rep.sup_far < 1.0;
      rep.near_ok = std::isfinite(cap_fit);
      break;
  }

  // L1 norm by composite Simpson on 2^15 panels (2^16 evaluation grid).
  {
    const int panels = 1 << 15;
    std::vector<cplx> fine = eval_trig_poly(Q, 2 * panels);
    double integral = 0.0;
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      double a = std::abs(fine[2 * p]);
      double mid = std::abs(fine[(2 * p + 1) % (2 * panels)]);
      double b = std::abs(fine[(2 * p + 2) % (2 * panels)]);
      integral += h / 6.0 * (a + 4.0 * mid + b);
    }
    rep.l1_norm = integral;
    double scale = (c.kind == CertificateKind::Linear)
                       ? static_cast<double>(n) * n
                       : static_cast<double>(n);
    rep.l1_constant = rep.l1_norm * scale / rep.k;
  }

  // Bernstein check with the n convention.
  rep.bernstein_lhs = grid_sup_abs(Qd, 1 << 14);
  double supQ = 0.0;
  for (const auto& v : vals) supQ = std::max(supQ, std::abs(v));
  rep.bernstein_rhs = n * supQ;
  rep.bernstein_ok = rep.bernstein_lhs <= rep.bernstein_rhs * (1.0 + 1e-9);

  return rep;
}

}  // namespace linespec
