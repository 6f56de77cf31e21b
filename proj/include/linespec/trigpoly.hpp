#pragma once

#include "linespec/types.hpp"

namespace linespec {

/// Trigonometric polynomial represented by a coefficient vector q of odd
/// length n = 2m+1. Evaluation uses the conjugate-first inner product with
/// the atom vector:
///
///   P(f) = <q, a(f)> = sum_{j=-m..m} conj(q_j) e^{i*2*pi*j*f}
///
/// which is the convention every module shares (the dual polynomial is
/// exactly TrigPoly{q_hat}). Coefficients are stored with the usual j+m
/// offset.
struct TrigPoly {
  CVec coeffs;

  int n() const { return static_cast<int>(coeffs.size()); }
  int half_width() const { return (n() - 1) / 2; }

  /// Build from plain Fourier coefficients b (P(f) = sum b_j e^{i2pi j f}).
  static TrigPoly from_fourier(const CVec& b) { return TrigPoly{b.conjugate()}; }

  /// Pointwise evaluation by direct summation, O(n).
  cplx eval(double f) const;

  /// Coefficients of the derivative: q'_j = -i*2*pi*j * q_j, so that
  /// eval commutes with differentiation under the conjugated convention.
  TrigPoly derivative() const;

  /// Multiply by a unit phasor so that eval(f) becomes eval(f - shift).
  TrigPoly shifted(double shift) const;
};

/// Values of P at f = r/grid_size, r = 0..grid_size-1, via a zero-padded
/// FFT. Requires grid_size >= n. Matches direct summation to roundoff.
std::vector<cplx> eval_trig_poly(const TrigPoly& p, int grid_size);

/// Max of |P| over the same uniform grid.
double grid_sup_abs(const TrigPoly& p, int grid_size);

}  // namespace linespec
