// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "linespec/baselines.hpp"
#include "linespec/bench.hpp"
#include "linespec/certificates.hpp"
#include "linespec/localize.hpp"
#include "linespec/metrics.hpp"
#include "linespec/spectrum.hpp"
#include "linespec/trigpoly.hpp"
#include "support/oracles.hpp"

using namespace linespec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void parallel_for(int count, const std::function<void(int)>& body,
                  int workers = 2) {
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  for (auto& th : pool) th.join();
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double se_of(const std::vector<double>& v) {
  double mu = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / (v.size() - 1) / v.size());
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// --------------------------------------------------------------------------
// Criterion 1: noiseless exact recovery at n=129, k=4, tau = 1e-3 ||y||.
// --------------------------------------------------------------------------
Outcome criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  const int n = 129, k = 4, trials = 20;
  std::vector<double> freq_err(trials, 1.0), amp_err(trials, 1.0);
  std::vector<bool> count_ok(trials, false);

  // The dual gate alone leaves the peaks a few 1e-4 off; the tighter
  // residual tolerance pushes both errors past the target with margin.
  AdmmConfig cfg;
  cfg.eps_abs = cfg.eps_rel = 1e-5;
  cfg.feas_tol = 1e-3;
  cfg.max_iters = 20000;
  parallel_for(trials, [&](int trial) {
    AtomicDecomposition truth = random_instance(
        n, k, 4.5 / n, AmpLaw::UnitModulus, 10000 + trial);
    Samples y = synthesize_samples(truth, n);
    AstSolution sol = solve_ast(y, 1e-3 * y.norm(), cfg);
    auto freqs = localize_frequencies(TrigPoly{sol.q_hat}, n);
    AtomicDecomposition est = debias_amplitudes(y, freqs);
    count_ok[trial] = est.size() == static_cast<std::size_t>(k);
    double fe = 0.0, ae = 0.0;
    for (const auto& t : truth.entries) {
      double best = 1.0;
      cplx amp = 0.0;
      for (const auto& e : est.entries) {
        double d = torus_distance(e.freq, t.freq);
        if (d < best) { best = d; amp = e.amp; }
      }
      fe = std::max(fe, best);
      ae = std::max(ae, std::abs(amp - t.amp) / std::abs(t.amp));
    }
    freq_err[trial] = fe;
    amp_err[trial] = ae;
  });

  double elapsed = seconds_since(t0);
  double worst_f = *std::max_element(freq_err.begin(), freq_err.end());
  double worst_a = *std::max_element(amp_err.begin(), amp_err.end());
  bool counts = std::all_of(count_ok.begin(), count_ok.end(), [](bool b) { return b; });
  bool pass = counts && worst_f <= 1e-4 && worst_a <= 1e-3 && elapsed <= 60.0;
  return {pass, fmt("max freq err %.2e (<=1e-4), max amp rel err %.2e (<=1e-3), "
                    "all counts %s, %.1f s (<=60)",
                    worst_f, worst_a, counts ? "ok" : "WRONG", elapsed)};
}

// --------------------------------------------------------------------------
// Criterion 2: atomic-norm identities and the fine-grid Lasso cross-check.
// --------------------------------------------------------------------------
Outcome criterion2() {
  const int n = 65;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0, 1);

  double worst_single = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    double mag = 0.3 + 2.0 * U(rng);
    cplx c = std::polar(mag, 2 * std::numbers::pi * U(rng));
    Samples x(CVec(c * atom_vector(TorusFreq(U(rng)), n).data()));
    double an = atomic_norm(x);
    worst_single = std::max(worst_single, std::abs(an - mag) / mag);
  }

  double worst_pair = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    double f1 = U(rng);
    double f2 = f1 + (4.5 + 3.0 * U(rng)) / n;
    cplx c1 = std::polar(0.4 + 1.5 * U(rng), 2 * std::numbers::pi * U(rng));
    cplx c2 = std::polar(0.4 + 1.5 * U(rng), 2 * std::numbers::pi * U(rng));
    AtomicDecomposition d{{{TorusFreq(f1), c1}, {TorusFreq(f2), c2}}};
    Samples x = synthesize_samples(d, n);
    double an = atomic_norm(x);
    double expect = std::abs(c1) + std::abs(c2);
    worst_pair = std::max(worst_pair, std::abs(an - expect) / expect);
  }

  double worst_lasso = 0.0;
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 3; ++trial) {
    CVec y(17);
    for (int i = 0; i < 17; ++i) y(i) = cplx(g(rng), g(rng));
    double tau = 0.5 * y.norm();
    AdmmConfig cfg;
    cfg.eps_abs = cfg.eps_rel = 1e-6;
    AstSolution sol = solve_ast(Samples(y), tau, cfg);
    auto lasso = oracles::grid_lasso_objective(y, tau, 1 << 13);
    worst_lasso = std::max(worst_lasso,
                           std::abs(sol.objective - lasso.objective) /
                               lasso.objective);
  }

  bool pass = worst_single <= 1e-3 && worst_pair <= 1e-2 && worst_lasso <= 0.01;
  return {pass, fmt("single-atom rel err %.2e (<=1e-3), pair rel err %.2e "
                    "(<=1e-2), lasso objective gap %.2e (<=1e-2)",
                    worst_single, worst_pair, worst_lasso)};
}

// --------------------------------------------------------------------------
// Criteria 3, 4 and 7 share one sweep: k=4, SNR 10 dB, n in {65,129,257},
// 20 paired trials of the full AST pipeline.
// --------------------------------------------------------------------------
struct SweepData {
  std::vector<int> ns{65, 129, 257};
  // [n index][trial]
  std::vector<std::vector<double>> mse, m1, m2, m3;
  std::vector<std::vector<bool>> converged;
  std::vector<std::vector<double>> dual_sup;
  double elapsed = 0.0;
};

SweepData run_sweep() {
  SweepData data;
  auto t0 = std::chrono::steady_clock::now();
  const int trials = 20, k = 4;
  const double snr_db = 10.0, eta = 1.1;
  for (auto& v : {&data.mse, &data.m1, &data.m2, &data.m3})
    v->assign(data.ns.size(), std::vector<double>(trials, 0.0));
  data.converged.assign(data.ns.size(), std::vector<bool>(trials, false));
  data.dual_sup.assign(data.ns.size(), std::vector<double>(trials, 0.0));

  for (std::size_t ni = 0; ni < data.ns.size(); ++ni) {
    const int n = data.ns[ni];
    parallel_for(trials, [&, ni, n](int trial) {
      AtomicDecomposition truth =
          random_instance(n, k, 4.5 / n, AmpLaw::Chi2One, 20000 + trial);
      Samples x_star = synthesize_samples(truth, n);
      double sigma = snr_to_sigma(x_star, snr_db);
      Samples y = add_noise(x_star, {sigma, 30000 + static_cast<std::uint64_t>(trial)});
      auto [est, sol] = ast_pipeline(y, eta);
      NearFarPartition part = NearFarPartition::around(truth, n);
      data.mse[ni][trial] = mse_per_sample(sol.x_hat, x_star);
      data.m1[ni][trial] = metric_m1(est, part);
      data.m2[ni][trial] = metric_m2(est, part);
      data.m3[ni][trial] = metric_m3(truth, est, part);
      data.converged[ni][trial] = sol.converged;
      data.dual_sup[ni][trial] = grid_sup_abs(TrigPoly{sol.q_hat}, 16384);
    });
  }
  data.elapsed = seconds_since(t0);
  return data;
}

Outcome criterion3(const SweepData& data) {
  std::vector<double> lx, ly;
  for (std::size_t ni = 0; ni < data.ns.size(); ++ni) {
    lx.push_back(std::log(static_cast<double>(data.ns[ni])));
    ly.push_back(std::log(mean_of(data.mse[ni])));
  }
  double mx = mean_of(lx), my = mean_of(ly);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  double slope = num / den;
  bool pass = slope >= -1.3 && slope <= -0.7 && data.elapsed <= 900.0;
  return {pass, fmt("log-log MSE slope %.3f (in [-1.3,-0.7]), mean MSE "
                    "%.3e/%.3e/%.3e, sweep %.1f s (<=900)",
                    slope, mean_of(data.mse[0]), mean_of(data.mse[1]),
                    mean_of(data.mse[2]), data.elapsed)};
}

Outcome criterion4(const SweepData& data) {
  bool pass = true;
  std::string detail;
  const char* names[3] = {"m1", "m2", "m3"};
  const std::vector<std::vector<double>>* metrics[3] = {&data.m1, &data.m2,
                                                        &data.m3};
  for (int mi = 0; mi < 3; ++mi) {
    for (std::size_t ni = 0; ni + 1 < data.ns.size(); ++ni) {
      const auto& prev = (*metrics[mi])[ni];
      const auto& next = (*metrics[mi])[ni + 1];
      double pooled = std::sqrt(se_of(prev) * se_of(prev) +
                                se_of(next) * se_of(next));
      bool ok = mean_of(next) <= mean_of(prev) + pooled;
      if (!ok) pass = false;
      detail += fmt("%s[n=%d->%d]: %.3e -> %.3e (SE %.1e)%s ", names[mi],
                    data.ns[ni], data.ns[ni + 1], mean_of(prev), mean_of(next),
                    pooled, ok ? "" : " VIOLATED");
    }
  }
  return {pass, detail};
}

Outcome criterion7(const SweepData& data) {
  int converged_count = 0, total = 0, violations = 0;
  double worst = 0.0;
  for (std::size_t ni = 0; ni < data.ns.size(); ++ni) {
    for (std::size_t t = 0; t < data.converged[ni].size(); ++t) {
      ++total;
      if (!data.converged[ni][t]) continue;
      ++converged_count;
      worst = std::max(worst, data.dual_sup[ni][t]);
      if (data.dual_sup[ni][t] > 1.01) ++violations;
    }
  }
  // a handful of tiny-tau solves join the check
  for (int trial = 0; trial < 3; ++trial) {
    const int n = 65;
    AtomicDecomposition truth =
        random_instance(n, 3, 5.0 / n, AmpLaw::UnitModulus, 40000 + trial);
    Samples y = synthesize_samples(truth, n);
    AstSolution sol = solve_ast(y, 1e-3 * y.norm());
    ++total;
    if (sol.converged) {
      ++converged_count;
      double sup = grid_sup_abs(TrigPoly{sol.q_hat}, 16384);
      worst = std::max(worst, sup);
      if (sup > 1.01) ++violations;
    }
  }
  bool pass = violations == 0 && converged_count > 0;
  return {pass, fmt("%d/%d converged, %d feasibility violations, worst sup "
                    "|Q| = %.4f (<=1.01)",
                    converged_count, total, violations, worst)};
}

// --------------------------------------------------------------------------
// Criterion 5: AST wins the performance profiles at beta = 1 for m1 and m2.
// --------------------------------------------------------------------------
Outcome criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.n_list = {65, 129};
  cfg.k_divisors = {8, 16};
  cfg.snr_db_list = {0.0, 10.0, 20.0};
  cfg.trials = 20;
  cfg.min_sep_times_n = 0.5;
  cfg.master_seed = 99;
  cfg.threads = 2;
  std::vector<ResultRow> rows = run_bench(cfg);

  bool pass = true;
  std::string detail;
  for (const std::string& metric : {std::string("m1"), std::string("m2")}) {
    ProfileSeries series = profiles_from_rows(rows, metric, 50);
    double p_ast = 0.0, p_best_other = 0.0;
    std::string winner;
    for (std::size_t s = 0; s < series.methods.size(); ++s) {
      double p1 = series.profile.curves[s][0];
      if (series.methods[s] == "AST") p_ast = p1;
      else if (p1 > p_best_other) { p_best_other = p1; winner = series.methods[s]; }
    }
    bool ok = p_ast > p_best_other;
    if (!ok) pass = false;
    detail += fmt("%s: P_AST(1)=%.3f vs best other %.3f%s  ", metric.c_str(),
                  p_ast, p_best_other, ok ? "" : " NOT LARGEST");
  }
  detail += fmt("(%.1f s)", seconds_since(t0));
  return {pass, detail};
}

// --------------------------------------------------------------------------
// Criterion 6: certificate sweep at n=257.
// --------------------------------------------------------------------------
Outcome criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  const int n = 257;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> U(0, 1);
  const int kcycle[3] = {1, 2, 4};

  std::vector<double> margins, cas, caps, l1s;
  for (int trial = 0; trial < 20; ++trial) {
    int k = kcycle[trial % 3];
    auto freqs =
        random_instance(n, k, 4.5 / n, AmpLaw::UnitModulus, 50000 + trial)
            .frequencies();
    CVec v(k);
    for (int i = 0; i < k; ++i)
      v(i) = std::polar(1.0, 2 * std::numbers::pi * U(rng));
    Certificate cert = build_sign_certificate(freqs, v, n);
    CertificateReport rep = verify_certificate(cert, n);
    margins.push_back(rep.far_margin);
    cas.push_back(rep.quad_ca);
    caps.push_back(rep.quad_ca_prime);
    l1s.push_back(rep.l1_constant);
  }

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  double min_margin = *std::min_element(margins.begin(), margins.end());
  double ca_med = median(cas), cap_med = median(caps);
  bool ca_stable = true, cap_stable = true;
  for (double c : cas)
    if (c < 0.5 * ca_med || c > 1.5 * ca_med) ca_stable = false;
  for (double c : caps)
    if (c < 0.5 * cap_med || c > 1.5 * cap_med) cap_stable = false;
  double l1_max = *std::max_element(l1s.begin(), l1s.end());
  double elapsed = seconds_since(t0);

  bool pass = min_margin > 0.01 && ca_stable && cap_stable && l1_max <= 5.0 &&
              elapsed <= 120.0;
  return {pass,
          fmt("min far margin %.4f (>0.01), C_a %.3f +-%s, C_a' %.3f +-%s, "
              "max L1*n/k %.3f (<=5), %.1f s (<=120)",
              min_margin, ca_med, ca_stable ? "stable" : "UNSTABLE", cap_med,
              cap_stable ? "stable" : "UNSTABLE", l1_max, elapsed)};
}

// --------------------------------------------------------------------------
// Criterion 8: oracle equivalences.
// --------------------------------------------------------------------------
Outcome criterion8() {
  // PSD projection vs the Jacobi reference
  std::mt19937_64 rng(808);
  std::normal_distribution<double> g;
  double worst_psd = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    CMat A(6, 6);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) A(r, c) = cplx(g(rng), g(rng));
    CMat H = 0.5 * (A + A.adjoint());
    worst_psd = std::max(
        worst_psd, (psd_project(H) - oracles::jacobi_psd_projection(H)).norm());
  }

  // FFT evaluation vs direct summation
  CVec q(65);
  for (int i = 0; i < 65; ++i) q(i) = cplx(g(rng), g(rng));
  auto vals = eval_trig_poly(TrigPoly{q}, 4096);
  double worst_eval = 0.0;
  for (int r = 0; r < 4096; r += 3) {
    worst_eval = std::max(
        worst_eval,
        std::abs(vals[r] - oracles::direct_trig_eval(q, r / 4096.0)));
  }

  // three-way noiseless agreement
  const int n = 65, k = 3;
  AtomicDecomposition truth =
      random_instance(n, k, 5.0 / n, AmpLaw::UnitModulus, 880);
  Samples y = synthesize_samples(truth, n);
  AstSolution sol = solve_ast(y, 1e-3 * y.norm());
  auto ast_f = localize_frequencies(TrigPoly{sol.q_hat}, n);
  SubspaceConfig sc;
  sc.k = k;
  auto music_f = music_estimate(y, sc);
  auto cadzow_f = cadzow_pipeline(y, k).frequencies();
  double worst_three = 0.0;
  for (const auto& t : truth.entries) {
    for (const auto* fs : {&ast_f, &music_f, &cadzow_f}) {
      double best = 1.0;
      for (const auto& f : *fs) best = std::min(best, torus_distance(f, t.freq));
      worst_three = std::max(worst_three, best);
    }
  }

  bool pass = worst_psd <= 1e-8 && worst_eval <= 1e-10 && worst_three <= 1e-4;
  return {pass, fmt("psd vs oracle %.2e (<=1e-8), eval vs direct %.2e "
                    "(<=1e-10), three-way freq err %.2e (<=1e-4)",
                    worst_psd, worst_eval, worst_three)};
}

}  // namespace

int main() {
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  int failures = 0;
  auto report = [&](int idx, const char* name, const Outcome& o) {
    std::printf("[%s] criterion %d: %s — %s\n", o.pass ? "PASS" : "FAIL", idx,
                name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report(1, "noiseless exact recovery", criterion1());
  report(2, "atomic-norm identities and Lasso cross-check", criterion2());

  SweepData sweep = run_sweep();
  report(3, "MSE rate scaling", criterion3(sweep));
  report(4, "localization metric decay", criterion4(sweep));
  report(5, "baseline comparison via performance profiles", criterion5());
  report(6, "dual certificate verification", criterion6());
  report(7, "dual feasibility of converged solutions", criterion7(sweep));
  report(8, "oracle equivalence of numerics", criterion8());

  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
