#pragma once

#include "linespec/ast.hpp"
#include "linespec/trigpoly.hpp"
#include "linespec/types.hpp"

namespace linespec {

struct LocalizeOptions {
  /// Keep grid local maxima of |Q| at or above this value.
  double peak_threshold = 1.0 - 1e-2;
  /// Reject dual vectors with sup |Q| above 1 + this tolerance.
  double feas_tol = 0.05;
  /// Grid size is max(grid_floor, grid_per_n * n).
  int grid_floor = 16384;
  int grid_per_n = 32;
};

/// Frequencies where |<q_hat, a(f)>| peaks near unity: grid scan, golden
/// section refinement of |Q|^2 on the bracketing cell, merge of maxima
/// closer than 1/(4n). Sorted output; empty is a valid result.
/// Throws std::invalid_argument when q_hat is not dual-feasible within
/// opts.feas_tol.
std::vector<TorusFreq> localize_frequencies(const TrigPoly& q_hat, int n,
                                            const LocalizeOptions& opts = {});

/// Least-squares amplitudes on a fixed frequency support:
/// min_alpha ||U alpha - y||_2 with U_{jl} = e^{i 2 pi j f_l}, solved by
/// column-pivoted QR. Throws std::invalid_argument on duplicate frequencies
/// (rank deficiency) or more frequencies than samples.
AtomicDecomposition debias_amplitudes(const Samples& y,
                                      const std::vector<TorusFreq>& freqs);

/// Full AST chain: estimate sigma from y, pick tau = eta*sigma*sqrt(n log n),
/// solve, localize through the dual polynomial, debias. Returns the debiased
/// decomposition together with the raw solver output.
std::pair<AtomicDecomposition, AstSolution> ast_pipeline(
    const Samples& y, double eta, const AdmmConfig& cfg = {},
    const LocalizeOptions& opts = {});

}  // namespace linespec
