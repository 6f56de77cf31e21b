#include "linespec/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "linespec/baselines.hpp"
#include "linespec/localize.hpp"
#include "linespec/spectrum.hpp"

namespace linespec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int make_odd(int n) { return (n % 2 == 0) ? n + 1 : n; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Cell {
  int n, k;
  double snr_db;
};

struct TrialTask {
  Cell cell;
  int trial;
  std::uint64_t seed;
  std::size_t first_row;  // slot of this trial's first method row
};

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

ResultRow base_row(const ExperimentConfig& cfg, const TrialTask& task,
                   Method method) {
  ResultRow row;
  row.n = task.cell.n;
  row.k = task.cell.k;
  row.snr_db = task.cell.snr_db;
  row.trial = task.trial;
  row.seed = task.seed;
  row.method = method_name(method);
  row.eta = cfg.eta;
  row.min_sep = cfg.min_sep_times_n / task.cell.n;
  return row;
}

void run_trial(const ExperimentConfig& cfg, const TrialTask& task,
               std::vector<ResultRow>& rows) {
  const int n = task.cell.n;
  const int k = task.cell.k;
  const double min_sep = cfg.min_sep_times_n / n;

  AtomicDecomposition truth = random_instance(
      n, k, min_sep, AmpLaw::Chi2One, splitmix64(task.seed ^ 0x1));
  Samples x_star = synthesize_samples(truth, n);
  double sigma = snr_to_sigma(x_star, task.cell.snr_db);
  Samples y = add_noise(x_star, {sigma, splitmix64(task.seed ^ 0x2)});
  NearFarPartition part = NearFarPartition::around(truth, n);

  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    Method method = cfg.methods[mi];
    ResultRow row = base_row(cfg, task, method);
    double t0 = now_ms();
    try {
      AtomicDecomposition est;
      Samples x_hat;
      switch (method) {
        case Method::Ast: {
          auto [decomp, sol] = ast_pipeline(y, cfg.eta, cfg.admm);
          est = std::move(decomp);
          x_hat = sol.x_hat;  // the denoised signal, not the re-synthesis
          row.converged = sol.converged;
          break;
        }
        case Method::Music: {
          SubspaceConfig sc;
          sc.k = k;
          est = debias_amplitudes(y, music_estimate(y, sc));
          x_hat = synthesize_samples(est, n);
          row.converged = true;
          break;
        }
        case Method::Cadzow: {
          est = cadzow_pipeline(y, k);
          x_hat = synthesize_samples(est, n);
          row.converged = true;
          break;
        }
      }
      row.m1 = metric_m1(est, part);
      row.m2 = metric_m2(est, part);
      row.m3 = metric_m3(truth, est, part);
      row.mse = mse_per_sample(x_hat, x_star);
    } catch (const std::exception&) {
      row.m1 = row.m2 = row.m3 = row.mse = kNaN;
      row.converged = false;
    }
    row.runtime_ms = now_ms() - t0;
    rows[task.first_row + mi] = std::move(row);
  }
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Ast: return "AST";
    case Method::Music: return "MUSIC";
    case Method::Cadzow: return "Cadzow";
  }
  return "?";
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t counter) {
  return splitmix64(master_seed + counter);
}

ExperimentConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t a = item.find_first_not_of(" \t");
      std::size_t b = item.find_last_not_of(" \t");
      if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      std::size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "n_list") {
      cfg.n_list.clear();
      for (const auto& v : split_list(value)) cfg.n_list.push_back(std::stoi(v));
    } else if (key == "k_divisors") {
      cfg.k_divisors.clear();
      for (const auto& v : split_list(value))
        cfg.k_divisors.push_back(std::stoi(v));
    } else if (key == "snr_db_list") {
      cfg.snr_db_list.clear();
      for (const auto& v : split_list(value))
        cfg.snr_db_list.push_back(std::stod(v));
    } else if (key == "trials") {
      cfg.trials = std::stoi(value);
    } else if (key == "min_sep_times_n") {
      cfg.min_sep_times_n = std::stod(value);
    } else if (key == "eta") {
      cfg.eta = std::stod(value);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& v : split_list(value)) {
        if (v == "AST") cfg.methods.push_back(Method::Ast);
        else if (v == "MUSIC") cfg.methods.push_back(Method::Music);
        else if (v == "Cadzow") cfg.methods.push_back(Method::Cadzow);
        else throw std::invalid_argument("config: unknown method " + v);
      }
    } else if (key == "master_seed") {
      cfg.master_seed = std::stoull(value);
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  return cfg;
}

std::vector<ResultRow> run_bench(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_bench: trials < 1");
  if (cfg.methods.empty()) throw std::invalid_argument("run_bench: no methods");

  std::vector<TrialTask> tasks;
  std::uint64_t counter = 0;
  std::size_t slot = 0;
  for (int n_raw : cfg.n_list) {
    int n = make_odd(n_raw);
    for (int div : cfg.k_divisors) {
      int k = std::max(1, n / div);
      for (double snr : cfg.snr_db_list) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
          TrialTask task{{n, k, snr}, trial,
                         derive_trial_seed(cfg.master_seed, counter), slot};
          tasks.push_back(task);
          ++counter;
          slot += cfg.methods.size();
        }
      }
    }
  }

  std::vector<ResultRow> rows(slot);
  const int workers = std::max(1, cfg.threads);
  if (workers == 1) {
    for (const auto& task : tasks) run_trial(cfg, task, rows);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_trial(cfg, tasks[i], rows);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "n,k,snr_db,trial,seed,method,m1,m2,m3,mse,runtime_ms,converged,eta,min_sep\n";
  out.precision(17);
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << r.snr_db << ',' << r.trial << ','
        << r.seed << ',' << r.method << ',' << r.m1 << ',' << r.m2 << ','
        << r.m3 << ',' << r.mse << ',' << r.runtime_ms << ','
        << (r.converged ? 1 : 0) << ',' << r.eta << ',' << r.min_sep << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("read_csv: empty input");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    auto next = [&]() {
      if (!std::getline(ss, field, ','))
        throw std::invalid_argument("read_csv: truncated row");
      return field;
    };
    ResultRow r;
    r.n = std::stoi(next());
    r.k = std::stoi(next());
    r.snr_db = std::stod(next());
    r.trial = std::stoi(next());
    r.seed = std::stoull(next());
    r.method = next();
    r.m1 = std::stod(next());
    r.m2 = std::stod(next());
    r.m3 = std::stod(next());
    r.mse = std::stod(next());
    r.runtime_ms = std::stod(next());
    r.converged = std::stoi(next()) != 0;
    r.eta = std::stod(next());
    r.min_sep = std::stod(next());
    rows.push_back(std::move(r));
  }
  return rows;
}

ProfileSeries profiles_from_rows(const std::vector<ResultRow>& rows,
                                 const std::string& metric, int points) {
  auto pick = [&](const ResultRow& r) -> double {
    if (metric == "m1") return r.m1;
    if (metric == "m2") return r.m2;
    if (metric == "m3") return r.m3;
    if (metric == "mse") return r.mse;
    throw std::invalid_argument("profiles: unknown metric column " + metric);
  };

  ProfileSeries series;
  for (const auto& r : rows)
    if (std::find(series.methods.begin(), series.methods.end(), r.method) ==
        series.methods.end())
      series.methods.push_back(r.method);

  // Experiments are (cell, trial) groups; order of first appearance.
  std::vector<std::string> keys;
  std::vector<std::vector<double>> errors;
  for (const auto& r : rows) {
    std::ostringstream key;
    key << r.n << '|' << r.k << '|' << r.snr_db << '|' << r.trial;
    auto it = std::find(keys.begin(), keys.end(), key.str());
    std::size_t idx;
    if (it == keys.end()) {
      keys.push_back(key.str());
      errors.emplace_back(series.methods.size(), kNaN);
      idx = keys.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - keys.begin());
    }
    auto mit = std::find(series.methods.begin(), series.methods.end(), r.method);
    errors[idx].resize(series.methods.size(), kNaN);
    errors[idx][mit - series.methods.begin()] = pick(r);
  }
  for (auto& row : errors) row.resize(series.methods.size(), kNaN);

  std::vector<double> betas(points);
  const double lo = std::log(1.0), hi = std::log(100.0);
  for (int i = 0; i < points; ++i)
    betas[i] = std::exp(lo + (hi - lo) * i / (points - 1));
  series.profile = performance_profile(errors, betas);
  return series;
}

void write_profiles_csv(const ProfileSeries& series, std::ostream& out) {
  out << "method,beta,p\n";
  out.precision(12);
  for (std::size_t s = 0; s < series.methods.size(); ++s)
    for (std::size_t b = 0; b < series.profile.betas.size(); ++b)
      out << series.methods[s] << ',' << series.profile.betas[b] << ','
          << series.profile.curves[s][b] << '\n';
}

}  // namespace linespec
