#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linespec/types.hpp"

namespace linespec {

/// Near/far split of the torus: radius-0.16/n neighborhoods around the true
/// frequencies, far region everything else.
struct NearFarPartition {
  std::vector<TorusFreq> centers;
  double radius = 0.0;

  static NearFarPartition around(const AtomicDecomposition& truth, int n) {
    return {truth.frequencies(), 0.16 / n};
  }
};

/// Region tag: index of the nearest center when within the radius, nullopt
/// for the far region.
std::optional<int> classify(TorusFreq f, const NearFarPartition& part);

/// Sum of |amp| over far-region estimate entries.
double metric_m1(const AtomicDecomposition& est, const NearFarPartition& part);

/// Sum over near-region entries of |amp| * (distance to the nearest true
/// frequency)^2.
double metric_m2(const AtomicDecomposition& est, const NearFarPartition& part);

/// Sum over true frequencies j of |c_j - sum of near-region estimate
/// amplitudes in N_j|. An uncovered true frequency contributes |c_j|.
double metric_m3(const AtomicDecomposition& truth, const AtomicDecomposition& est,
                 const NearFarPartition& part);

/// (1/n) ||x_hat - x_star||_2^2.
double mse_per_sample(const Samples& x_hat, const Samples& x_star);

/// Constant-free rate expressions for scaling plots:
/// upper sigma^2 k log(n)/n, lower sigma^2 k log(n/(4k))/n (clamped at 0).
struct ReferenceRates {
  double upper = 0.0;
  double lower = 0.0;
};
ReferenceRates reference_rates(int n, int k, double sigma);

/// Performance profile P_s(beta) = fraction of experiments where method s is
/// within factor beta of the per-experiment best. Experiments whose minimum
/// error is zero or not finite are dropped and counted.
struct PerformanceProfile {
  std::vector<double> betas;
  std::vector<std::vector<double>> curves;  // [method][beta index]
  int experiments_used = 0;
  int experiments_dropped = 0;
};
PerformanceProfile performance_profile(
    const std::vector<std::vector<double>>& errors,  // [experiment][method]
    const std::vector<double>& betas);

/// One benchmark cell result.
struct MetricsRecord {
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, mse = 0.0;
  std::string method;
  double runtime_ms = 0.0;
  int n = 0, k = 0;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  double eta = 0.0;
};

}  // namespace linespec
