#pragma once

#include <vector>

#include "linespec/trigpoly.hpp"
#include "linespec/types.hpp"

namespace linespec {

/// Squared-Fejer interpolation basis for dual certificates. With m = (n-1)/2
/// and h = floor(m/2), the Fejer kernel G has Fourier coefficients
/// g_l = (h+1-|l|)/(h+1)^2 on |l| <= h, and K = G^2 is its self-convolution,
/// normalized so K(0) = 1. Derivatives come from multiplying the Fourier
/// coefficients by powers of i*2*pi*l.
struct KernelBasis {
  int n = 0;
  int m = 0;
  int half = 0;            // h
  Eigen::VectorXd g;       // length 2h+1, centered
  CVec k_coeffs;           // length n, centered Fourier coefficients of K

  TrigPoly kernel() const;                  // K
  TrigPoly kernel_derivative(int order) const;  // K', K'', K'''
};

KernelBasis build_kernel(int n);

enum class CertificateKind { Sign, Linear, Selector };

/// An interpolating dual certificate Q = sum_j alpha_j K(.-f_j)
///                                       + sum_j beta_j K'(.-f_j).
struct Certificate {
  CertificateKind kind = CertificateKind::Sign;
  std::vector<TorusFreq> freqs;
  CVec v;                   // node targets (values or slopes, per kind)
  int selector_index = -1;  // Selector only
  CVec alpha, beta;
  TrigPoly poly;
  double condition_number = 0.0;  // of the scaled interpolation system
  bool inside_guarantee = false;  // n >= 257
};

/// Sign-interpolating certificate: Q(f_j) = v_j, Q'(f_j) = 0. Requires
/// |v_j| = 1. Throws numeric_error (with the condition number) when the
/// interpolation system is singular.
Certificate build_sign_certificate(const std::vector<TorusFreq>& freqs,
                                   const CVec& v, int n);

/// Linear certificate: Q1(f_j) = 0, Q1'(f_j) = v_j.
Certificate build_linear_certificate(const std::vector<TorusFreq>& freqs,
                                     const CVec& v, int n);

/// Selector certificate for node j (0-based): Q(f_j) = 1, Q(f_j') = 0 for
/// j' != j, derivative zero at every node.
Certificate build_selector_certificate(const std::vector<TorusFreq>& freqs,
                                       int j, int n);

/// Numerical verification report. Fitted constants are empirical: the
/// verifier fits them from dense evaluation rather than asserting any
/// hard-coded theory value.
struct CertificateReport {
  CertificateKind kind = CertificateKind::Sign;
  int n = 0;
  int k = 0;
  bool inside_guarantee = false;
  double condition_number = 0.0;
  bool ill_conditioned = false;   // condition number > 1e10

  double interp_residual = 0.0;   // max node defect (values and slopes)
  bool interp_ok = false;         // residual <= 1e-8

  double sup_far = 0.0;           // sup over the far region of |Q|
  double far_margin = 0.0;        // 1 - sup_far (sign/selector)
  double far_constant = 0.0;      // fitted constant: C_b, C_b^1 = n*sup_far, C_2'
  bool far_ok = false;

  // Near-region quadratic fits. Sign: |Q| <= 1 - ca/2 n^2 d^2 and
  // |Q - v_j| <= ca_prime/2 n^2 d^2. Linear: |Q1 - v_j d| <= ca/2 n d^2.
  // Selector: |1 - Q| <= ca n^2 d^2 at its own node, |Q| <= ca n^2 d^2 at
  // the others.
  double quad_ca = 0.0;
  double quad_ca_prime = 0.0;
  bool near_ok = false;

  double l1_norm = 0.0;           // integral of |Q| over [0,1]
  double l1_constant = 0.0;       // l1_norm * n / k (Linear: * n^2 / k)

  double bernstein_lhs = 0.0;     // sup |Q'|
  double bernstein_rhs = 0.0;     // n * sup |Q|
  bool bernstein_ok = false;

  bool all_ok() const {
    return interp_ok && far_ok && near_ok && bernstein_ok && !ill_conditioned;
  }
};

CertificateReport verify_certificate(const Certificate& c, int n);

}  // namespace linespec
