#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "linespec/ast.hpp"
#include "linespec/metrics.hpp"
#include "linespec/types.hpp"

namespace linespec {

enum class Method { Ast, Music, Cadzow };
std::string method_name(Method m);

/// Benchmark grid. `k_divisors` gives k = n/divisor per cell (at least 1).
/// min_sep_times_n is the pairwise separation in units of 1/n. Even n values
/// are bumped to the next odd number (recorded per row via the n column).
struct ExperimentConfig {
  std::vector<int> n_list = {64, 128, 256};
  std::vector<int> k_divisors = {4, 8, 16};
  std::vector<double> snr_db_list = {-10, -5, 0, 5, 10, 15, 20};
  int trials = 20;
  double min_sep_times_n = 0.5;  // separation 1/(2n)
  double eta = 1.1;
  std::vector<Method> methods = {Method::Ast, Method::Music, Method::Cadzow};
  std::uint64_t master_seed = 1;
  int threads = 1;
  AdmmConfig admm;
};

/// One CSV row: cell coordinates, metrics, convergence marker.
struct ResultRow {
  int n = 0, k = 0;
  double snr_db = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string method;
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, mse = 0.0;
  double runtime_ms = 0.0;
  bool converged = false;
  double eta = 0.0;
  double min_sep = 0.0;
};

/// Deterministic per-trial seed: splitmix64 of master_seed + the row-major
/// (cell, trial) counter. The same instance and noise draw are shared by
/// every method in a trial.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t counter);

/// Flat key = value config file ('#' comments, comma-separated lists).
/// Keys: n_list, k_divisors, snr_db_list, trials, min_sep_times_n, eta,
/// methods, master_seed, threads. Unknown keys are an error.
ExperimentConfig load_bench_config(const std::string& path);

/// Run the full grid. Trials are independent tasks executed on
/// cfg.threads workers; rows come back ordered by (cell, trial, method).
/// Per-trial failures are recorded in the row (NaN metrics, converged=0),
/// never aborting the run.
std::vector<ResultRow> run_bench(const ExperimentConfig& cfg);

/// CSV with the stable schema
/// n,k,snr_db,trial,seed,method,m1,m2,m3,mse,runtime_ms,converged,eta,min_sep
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_csv(std::istream& in);

/// Performance-profile series for one metric column ("m1", "m2", "m3",
/// "mse") over a log-spaced beta grid [1, 100] with `points` samples.
/// Output rows: method,beta,p.
struct ProfileSeries {
  std::vector<std::string> methods;
  PerformanceProfile profile;
};
ProfileSeries profiles_from_rows(const std::vector<ResultRow>& rows,
                                 const std::string& metric, int points = 200);
void write_profiles_csv(const ProfileSeries& series, std::ostream& out);

}  // namespace linespec
