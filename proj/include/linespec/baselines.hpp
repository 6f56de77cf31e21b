#pragma once

#include "linespec/types.hpp"

namespace linespec {

/// Subspace baseline settings. `order` is the correlation/prediction order M
/// (0 means pick floor(n/3) from the data); `k` is the model order the
/// caller supplies.
struct SubspaceConfig {
  int order = 0;
  int k = 0;
};

/// Root-MUSIC: forward-backward autocorrelation of order M+1, noise-subspace
/// projector polynomial, roots by companion eigenproblem, the k roots inside
/// the closed unit disk nearest the circle. Returns exactly k frequencies.
/// Throws std::invalid_argument for k >= order, numeric_error on solver
/// breakdown.
std::vector<TorusFreq> music_estimate(const Samples& y, const SubspaceConfig& cfg);

/// Cadzow denoising: alternate rank-k SVD truncation of the rectangular
/// Toeplitz data matrix (floor(n/2)+1 rows) with diagonal averaging back to
/// Toeplitz, until the relative change is <= 1e-8 or max_rounds.
Samples cadzow_denoise(const Samples& y, int k, int max_rounds = 20);

/// Annihilating-filter frequency extraction: the k roots of the length-(k+1)
/// null vector of the rank-k Toeplitz data matrix, projected radially onto
/// the unit circle. Throws numeric_error when the null space dimension is
/// not 1.
std::vector<TorusFreq> annihilating_freqs(const Samples& x, int k);

/// cadzow_denoise, annihilating_freqs, then least-squares amplitudes against
/// the observed samples. Falls back to root-MUSIC on the denoised samples if
/// the annihilating filter is degenerate.
AtomicDecomposition cadzow_pipeline(const Samples& y, int k);

}  // namespace linespec
