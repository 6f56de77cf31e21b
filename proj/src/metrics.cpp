#include "linespec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linespec {

std::optional<int> classify(TorusFreq f, const NearFarPartition& part) {
  int best = -1;
  double bestd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < part.centers.size(); ++i) {
    double d = torus_distance(f, part.centers[i]);
    if (d < bestd) { bestd = d; best = static_cast<int>(i); }
  }
  if (best < 0 || bestd > part.radius) return std::nullopt;
  return best;
}

double metric_m1(const AtomicDecomposition& est, const NearFarPartition& part) {
  double acc = 0.0;
  for (const auto& e : est.entries)
    if (!classify(e.freq, part)) acc += std::abs(e.amp);
  return acc;
}

double metric_m2(const AtomicDecomposition& est, const NearFarPartition& part) {
  double acc = 0.0;
  for (const auto& e : est.entries) {
    if (!classify(e.freq, part)) continue;
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& c : part.centers)
      dmin = std::min(dmin, torus_distance(e.freq, c));
    acc += std::abs(e.amp) * dmin * dmin;
  }
  return acc;
}

double metric_m3(const AtomicDecomposition& truth, const AtomicDecomposition& est,
                 const NearFarPartition& part) {
  double acc = 0.0;
  for (std::size_t j = 0; j < truth.entries.size(); ++j) {
    cplx near_sum = 0.0;
    for (const auto& e : est.entries) {
      auto tag = classify(e.freq, part);
      if (tag && *tag == static_cast<int>(j)) near_sum += e.amp;
    }
    acc += std::abs(truth.entries[j].amp - near_sum);
  }
  return acc;
}

double mse_per_sample(const Samples& x_hat, const Samples& x_star) {
  if (x_hat.n() != x_star.n())
    throw std::invalid_argument("mse_per_sample: length mismatch");
  return (x_hat.data() - x_star.data()).squaredNorm() / x_hat.n();
}

ReferenceRates reference_rates(int n, int k, double sigma) {
  if (n < 2 || k < 1) throw std::invalid_argument("reference_rates: bad n or k");
  ReferenceRates r;
  r.upper = sigma * sigma * k * std::log(static_cast<double>(n)) / n;
  r.lower = sigma * sigma * k *
            std::max(0.0, std::log(n / (4.0 * k))) / n;
  return r;
}

PerformanceProfile performance_profile(
    const std::vector<std::vector<double>>& errors,
    const std::vector<double>& betas) {
  PerformanceProfile prof;
  prof.betas = betas;
  if (errors.empty()) return prof;
  const std::size_t n_methods = errors.front().size();
  prof.curves.assign(n_methods, std::vector<double>(betas.size(), 0.0));

  std::vector<const std::vector<double>*> usable;
  for (const auto& row : errors) {
    if (row.size() != n_methods)
      throw std::invalid_argument("performance_profile: ragged error matrix");
    double best = std::numeric_limits<double>::infinity();
    for (double e : row)
      if (std::isfinite(e)) best = std::min(best, e);
    if (!std::isfinite(best) || best <= 0.0) {
      ++prof.experiments_dropped;
      continue;
    }
    usable.push_back(&row);
  }
  prof.experiments_used = static_cast<int>(usable.size());
  if (usable.empty()) return prof;

  for (const auto* row : usable) {
    double best = std::numeric_limits<double>::infinity();
    for (double e : *row)
      if (std::isfinite(e)) best = std::min(best, e);
    for (std::size_t s = 0; s < n_methods; ++s) {
      double e = (*row)[s];
      if (!std::isfinite(e)) continue;
      for (std::size_t b = 0; b < betas.size(); ++b)
        if (e <= betas[b] * best) prof.curves[s][b] += 1.0;
    }
  }
  for (auto& curve : prof.curves)
    for (double& v : curve) v /= prof.experiments_used;
  return prof;
}

}  // namespace linespec
