#pragma once

#include <cstdint>
#include <vector>

#include "linespec/types.hpp"

namespace linespec {

/// Amplitude law for random instances.
enum class AmpLaw {
  Chi2One,      // |c| ~ chi^2(1) (squared standard normal), uniform phase
  UnitModulus,  // |c| = 1, uniform phase
};

/// The atom a(f): entries e^{i*2*pi*j*f} for logical j in {-m..m}.
/// Throws std::invalid_argument for even or too-small n.
Samples atom_vector(TorusFreq f, int n);

/// Sum of amp * a(freq) over all entries; the zero vector for an empty
/// decomposition.
Samples synthesize_samples(const AtomicDecomposition& decomp, int n);

/// True iff every pair of frequencies is separated by more than 4/n on the
/// torus. Vacuously true for fewer than two frequencies.
bool check_min_separation(const std::vector<TorusFreq>& freqs, int n);

/// k frequencies uniform on the torus with pairwise separation >= min_sep
/// (rejection sampling, budget 10^6 draws), amplitudes per `law` with
/// independent uniform phases. Deterministic given seed.
/// Throws std::invalid_argument for infeasible packing (k*min_sep >= 1),
/// resource_exhausted when the rejection budget runs out.
AtomicDecomposition random_instance(int n, int k, double min_sep, AmpLaw law,
                                    std::uint64_t seed);

/// y = x + w with w per NoiseSpec; sigma = 0 returns x exactly.
Samples add_noise(const Samples& x, const NoiseSpec& spec);

/// Sigma such that 10*log10((||x||^2/n) / sigma^2) = snr_db, i.e. SNR is the
/// per-sample power ratio. Throws std::invalid_argument on zero signal.
double snr_to_sigma(const Samples& x, double snr_db);

}  // namespace linespec
