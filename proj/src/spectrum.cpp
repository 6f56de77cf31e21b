#include "linespec/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "linespec/errors.hpp"

namespace linespec {

double torus_distance(TorusFreq a, TorusFreq b) {
  double d = std::abs(a.value() - b.value());
  return std::min(d, 1.0 - d);
}

Samples atom_vector(TorusFreq f, int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("atom_vector: n must be odd and >= 3");
  const int m = (n - 1) / 2;
  CVec a(n);
  for (int j = -m; j <= m; ++j)
    a(j + m) = std::polar(1.0, 2.0 * std::numbers::pi * j * f.value());
  return Samples(std::move(a));
}

Samples synthesize_samples(const AtomicDecomposition& decomp, int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("synthesize_samples: n must be odd and >= 3");
  CVec x = CVec::Zero(n);
  for (const auto& e : decomp.entries) x += e.amp * atom_vector(e.freq, n).data();
  return Samples(std::move(x));
}

bool check_min_separation(const std::vector<TorusFreq>& freqs, int n) {
  const double bound = 4.0 / n;
  for (std::size_t p = 0; p < freqs.size(); ++p)
    for (std::size_t q = p + 1; q < freqs.size(); ++q)
      if (torus_distance(freqs[p], freqs[q]) <= bound) return false;
  return true;
}

AtomicDecomposition random_instance(int n, int k, double min_sep, AmpLaw law,
                                    std::uint64_t seed) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("random_instance: n must be odd and >= 3");
  if (k < 0) throw std::invalid_argument("random_instance: k < 0");
  if (k > 0 && k * min_sep >= 1.0)
    throw std::invalid_argument("random_instance: infeasible packing, k*min_sep >= 1");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  constexpr long kDrawBudget = 1000000;
  long draws = 0;
  std::vector<TorusFreq> freqs;
  while (static_cast<int>(freqs.size()) < k) {
    if (++draws > kDrawBudget)
      throw resource_exhausted("random_instance: rejection budget exceeded");
    TorusFreq f(unif(rng));
    bool ok = true;
    for (const auto& g : freqs)
      if (torus_distance(f, g) < min_sep) { ok = false; break; }
    if (ok) freqs.push_back(f);
  }

  AtomicDecomposition decomp;
  decomp.entries.reserve(k);
  for (int l = 0; l < k; ++l) {
    double mag = 1.0;
    if (law == AmpLaw::Chi2One) {
      double g = gauss(rng);
      mag = g * g;
    }
    double phase = 2.0 * std::numbers::pi * unif(rng);
    decomp.entries.push_back({freqs[l], std::polar(mag, phase)});
  }
  return decomp;
}

Samples add_noise(const Samples& x, const NoiseSpec& spec) {
  if (spec.sigma < 0) throw std::invalid_argument("add_noise: sigma < 0");
  if (spec.sigma == 0.0) return x;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec y = x.data();
  const double scale = spec.sigma / std::numbers::sqrt2;
  for (int i = 0; i < y.size(); ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    y(i) += scale * cplx(re, im);
  }
  return Samples(std::move(y));
}

double snr_to_sigma(const Samples& x, double snr_db) {
  double power = x.squared_norm() / x.n();
  if (power == 0.0) throw std::invalid_argument("snr_to_sigma: zero signal");
  return std::sqrt(power / std::pow(10.0, snr_db / 10.0));
}

}  // namespace linespec
