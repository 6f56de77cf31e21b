// Command-line harness: instance generation, AST denoising, dual-polynomial
// localization, benchmark grid, performance profiles, certificate checks.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linespec/baselines.hpp"
#include "linespec/bench.hpp"
#include "linespec/certificates.hpp"
#include "linespec/errors.hpp"
#include "linespec/io.hpp"
#include "linespec/localize.hpp"
#include "linespec/spectrum.hpp"

using namespace linespec;

namespace {

std::vector<TorusFreq> parse_freq_list(const std::string& csv) {
  std::vector<TorusFreq> out;
  std::istringstream ss(csv);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (field.empty()) continue;
    out.emplace_back(std::stod(field));
  }
  return out;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << std::endl;
  else
    save_json_file(out_path, j);
}

int run(int argc, char** argv) {
  CLI::App app{"line spectral estimation toolkit"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "draw a random instance as JSON");
  int gen_n = 65, gen_k = 4;
  double gen_sep_n = 0.5, gen_snr = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t gen_seed = 1;
  std::string gen_amp = "chi2", gen_out;
  gen->add_option("--n", gen_n, "number of samples (odd; even is bumped)");
  gen->add_option("--k", gen_k, "number of frequencies");
  gen->add_option("--min-sep-n", gen_sep_n, "pairwise separation in units of 1/n");
  gen->add_option("--snr-db", gen_snr, "add noise at this SNR (omit for noiseless)");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--amp-law", gen_amp, "amplitude law: chi2 | unit")
      ->check(CLI::IsMember({"chi2", "unit"}));
  gen->add_option("--out", gen_out, "output JSON path (default stdout)");

  // denoise -----------------------------------------------------------
  auto* den = app.add_subcommand("denoise", "AST solve on samples from a file");
  std::string den_in, den_out;
  double den_tau = 0.0, den_eta = 1.1;
  AdmmConfig den_cfg;
  den->add_option("--in", den_in, "input samples (JSON or CSV)")->required();
  den->add_option("--tau", den_tau, "regularization (omit to pick from data)");
  den->add_option("--eta", den_eta, "eta for the tau rule");
  den->add_option("--rho", den_cfg.rho, "ADMM penalty weight");
  den->add_option("--eps", den_cfg.eps_abs, "ADMM tolerance (abs and rel)");
  den->add_option("--max-iters", den_cfg.max_iters, "ADMM iteration cap");
  den->add_option("--out", den_out, "output JSON path (default stdout)");

  // localize ----------------------------------------------------------
  auto* loc = app.add_subcommand("localize", "decomposition from a solution file");
  std::string loc_in, loc_out;
  LocalizeOptions loc_opts;
  loc->add_option("--in", loc_in, "solution JSON from denoise")->required();
  loc->add_option("--threshold", loc_opts.peak_threshold, "peak threshold on |Q|");
  loc->add_option("--out", loc_out, "output JSON path (default stdout)");

  // bench -------------------------------------------------------------
  auto* ben = app.add_subcommand("bench", "run the benchmark grid to CSV");
  ExperimentConfig bcfg;
  std::vector<std::string> bmethods = {"AST", "MUSIC", "Cadzow"};
  std::string ben_out = "bench.csv", ben_config;
  ben->add_option("--config", ben_config, "key = value config file");
  auto* opt_n = ben->add_option("--n-list", bcfg.n_list, "sample counts");
  auto* opt_k = ben->add_option("--k-divisors", bcfg.k_divisors,
                                "k = n/divisor per cell");
  auto* opt_snr = ben->add_option("--snr-list", bcfg.snr_db_list, "SNR grid in dB");
  auto* opt_trials = ben->add_option("--trials", bcfg.trials, "trials per cell");
  auto* opt_sep = ben->add_option("--min-sep-n", bcfg.min_sep_times_n,
                                  "separation in units of 1/n");
  auto* opt_eta = ben->add_option("--eta", bcfg.eta, "tau rule eta");
  auto* opt_methods =
      ben->add_option("--methods", bmethods, "subset of AST MUSIC Cadzow");
  auto* opt_seed = ben->add_option("--seed", bcfg.master_seed, "master seed");
  auto* opt_threads = ben->add_option("--threads", bcfg.threads, "worker threads");
  ben->add_option("--out", ben_out, "output CSV path");

  // profiles ----------------------------------------------------------
  auto* pro = app.add_subcommand("profiles", "performance profiles from a CSV");
  std::string pro_in, pro_out = "profiles.csv", pro_metric = "m1";
  int pro_points = 200;
  pro->add_option("--in", pro_in, "benchmark CSV")->required();
  pro->add_option("--metric", pro_metric, "m1 | m2 | m3 | mse")
      ->check(CLI::IsMember({"m1", "m2", "m3", "mse"}));
  pro->add_option("--points", pro_points, "beta grid size");
  pro->add_option("--out", pro_out, "output CSV path");

  // certify -----------------------------------------------------------
  auto* cer = app.add_subcommand("certify", "build and verify a dual certificate");
  int cer_n = 257, cer_selector = 0;
  std::string cer_freqs, cer_kind = "sign", cer_out;
  cer->add_option("--n", cer_n, "number of samples (odd)");
  cer->add_option("--freqs", cer_freqs, "comma-separated frequencies in [0,1)")
      ->required();
  cer->add_option("--kind", cer_kind, "sign | linear | selector")
      ->check(CLI::IsMember({"sign", "linear", "selector"}));
  cer->add_option("--selector-index", cer_selector, "node index for selector");
  cer->add_option("--out", cer_out, "output JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad usage is exit 1; --help stays 0
  }

  if (gen->parsed()) {
    int n = gen_n % 2 == 0 ? gen_n + 1 : gen_n;
    AmpLaw law = gen_amp == "unit" ? AmpLaw::UnitModulus : AmpLaw::Chi2One;
    AtomicDecomposition truth =
        random_instance(n, gen_k, gen_sep_n / n, law, gen_seed);
    Samples x = synthesize_samples(truth, n);
    json j{{"n", n},
           {"k", gen_k},
           {"seed", gen_seed},
           {"min_sep", gen_sep_n / n},
           {"amp_law", gen_amp},
           {"decomposition", decomposition_to_json(truth)},
           {"clean", samples_to_json(x)}};
    if (!std::isnan(gen_snr)) {
      double sigma = snr_to_sigma(x, gen_snr);
      Samples y = add_noise(x, {sigma, gen_seed + 1});
      j["snr_db"] = gen_snr;
      j["sigma"] = sigma;
      j["samples"] = samples_to_json(y);
    } else {
      j["samples"] = samples_to_json(x);
    }
    emit(j, gen_out);
    return 0;
  }

  if (den->parsed()) {
    Samples y = load_samples_file(den_in);
    den_cfg.eps_rel = den_cfg.eps_abs;
    double tau = den_tau;
    if (tau <= 0.0) {
      double sigma = estimate_noise_sigma(y);
      tau = std::max(choose_tau(sigma, y.n(), den_eta), 1e-8 * y.norm());
    }
    AstSolution sol = solve_ast(y, tau, den_cfg);
    emit(solution_to_json(sol, y, tau), den_out);
    return 0;
  }

  if (loc->parsed()) {
    StoredSolution st = solution_from_json(load_json_file(loc_in));
    std::vector<TorusFreq> freqs =
        localize_frequencies(TrigPoly{st.sol.q_hat}, st.y.n(), loc_opts);
    AtomicDecomposition decomp = debias_amplitudes(st.y, freqs);
    json j = decomposition_to_json(decomp);
    j["meta"] = {{"n", st.y.n()},
                 {"tau", st.tau},
                 {"threshold", loc_opts.peak_threshold}};
    emit(j, loc_out);
    return 0;
  }

  if (ben->parsed()) {
    if (!ben_config.empty()) {
      // config file first, explicit flags override
      ExperimentConfig from_file = load_bench_config(ben_config);
      from_file.n_list = opt_n->count() ? bcfg.n_list : from_file.n_list;
      from_file.k_divisors =
          opt_k->count() ? bcfg.k_divisors : from_file.k_divisors;
      from_file.snr_db_list =
          opt_snr->count() ? bcfg.snr_db_list : from_file.snr_db_list;
      from_file.trials = opt_trials->count() ? bcfg.trials : from_file.trials;
      from_file.min_sep_times_n =
          opt_sep->count() ? bcfg.min_sep_times_n : from_file.min_sep_times_n;
      from_file.eta = opt_eta->count() ? bcfg.eta : from_file.eta;
      from_file.master_seed =
          opt_seed->count() ? bcfg.master_seed : from_file.master_seed;
      from_file.threads = opt_threads->count() ? bcfg.threads : from_file.threads;
      bool methods_from_flags = opt_methods->count() > 0;
      ExperimentConfig merged = from_file;
      bcfg = merged;
      if (!methods_from_flags) bmethods.clear();
    }
    if (!bmethods.empty()) {
      bcfg.methods.clear();
      for (const auto& name : bmethods) {
        if (name == "AST") bcfg.methods.push_back(Method::Ast);
        else if (name == "MUSIC") bcfg.methods.push_back(Method::Music);
        else if (name == "Cadzow") bcfg.methods.push_back(Method::Cadzow);
        else throw std::invalid_argument("unknown method " + name);
      }
    }
    std::vector<ResultRow> rows = run_bench(bcfg);
    std::ofstream out(ben_out);
    if (!out) throw std::runtime_error("cannot write " + ben_out);
    write_csv(rows, out);
    std::cerr << "wrote " << rows.size() << " rows to " << ben_out << "\n";
    return 0;
  }

  if (pro->parsed()) {
    std::ifstream in(pro_in);
    if (!in) throw std::runtime_error("cannot open " + pro_in);
    std::vector<ResultRow> rows = read_csv(in);
    ProfileSeries series = profiles_from_rows(rows, pro_metric, pro_points);
    std::ofstream out(pro_out);
    if (!out) throw std::runtime_error("cannot write " + pro_out);
    write_profiles_csv(series, out);
    return 0;
  }

  if (cer->parsed()) {
    if (cer_n % 2 == 0) ++cer_n;
    std::vector<TorusFreq> freqs = parse_freq_list(cer_freqs);
    if (freqs.empty()) throw std::invalid_argument("certify: no frequencies");
    Certificate cert;
    if (cer_kind == "sign") {
      CVec v = CVec::Ones(freqs.size());
      cert = build_sign_certificate(freqs, v, cer_n);
    } else if (cer_kind == "linear") {
      CVec v = CVec::Ones(freqs.size());
      cert = build_linear_certificate(freqs, v, cer_n);
    } else {
      cert = build_selector_certificate(freqs, cer_selector, cer_n);
    }
    CertificateReport rep = verify_certificate(cert, cer_n);
    emit(certificate_report_to_json(rep), cer_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Nested BLAS threading only hurts at these matrix sizes.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  try {
    return run(argc, argv);
  } catch (const numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const resource_exhausted& e) {
    std::cerr << "resource exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
