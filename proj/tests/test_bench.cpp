#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "linespec/bench.hpp"

using namespace linespec;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.n_list = {33};
  cfg.k_divisors = {8};
  cfg.snr_db_list = {10.0};
  cfg.trials = 2;
  cfg.methods = {Method::Music, Method::Cadzow};
  cfg.master_seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("single-cell single-method run emits one row") {
  ExperimentConfig cfg = tiny_config();
  cfg.trials = 1;
  cfg.methods = {Method::Music};
  auto rows = run_bench(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 33);
  CHECK(rows[0].k == 4);
  CHECK(rows[0].method == "MUSIC");
  CHECK(std::isfinite(rows[0].mse));
}

TEST_CASE("row count is the grid product") {
  ExperimentConfig cfg = tiny_config();
  cfg.n_list = {33, 49};
  cfg.snr_db_list = {0.0, 10.0};
  auto rows = run_bench(cfg);
  CHECK(rows.size() == 2u * 1u * 2u * 2u * 2u);  // n * k * snr * trials * methods
}

TEST_CASE("even n is bumped to odd") {
  ExperimentConfig cfg = tiny_config();
  cfg.n_list = {32};
  cfg.trials = 1;
  auto rows = run_bench(cfg);
  for (const auto& r : rows) CHECK(r.n == 33);
}

TEST_CASE("reruns with one seed agree; different seeds differ") {
  ExperimentConfig cfg = tiny_config();
  auto a = run_bench(cfg);
  auto b = run_bench(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].m1 == b[i].m1);
    CHECK(a[i].m2 == b[i].m2);
    CHECK(a[i].m3 == b[i].m3);
    CHECK(a[i].mse == b[i].mse);
    CHECK(a[i].seed == b[i].seed);
  }
  cfg.master_seed = 8;
  auto c = run_bench(cfg);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].mse != c[i].mse) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("threaded run matches the serial row order") {
  ExperimentConfig cfg = tiny_config();
  cfg.trials = 3;
  auto serial = run_bench(cfg);
  cfg.threads = 2;
  auto parallel = run_bench(cfg);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].method == parallel[i].method);
    CHECK(serial[i].trial == parallel[i].trial);
    CHECK(serial[i].mse == parallel[i].mse);
  }
}

TEST_CASE("CSV round trip preserves the schema") {
  auto rows = run_bench(tiny_config());
  std::stringstream ss;
  write_csv(rows, ss);
  std::string header;
  std::getline(ss, header);
  CHECK(header ==
        "n,k,snr_db,trial,seed,method,m1,m2,m3,mse,runtime_ms,converged,eta,min_sep");
  ss.seekg(0);
  auto back = read_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].method == rows[i].method);
    CHECK(back[i].m1 == doctest::Approx(rows[i].m1));
    CHECK(back[i].mse == doctest::Approx(rows[i].mse));
    CHECK(back[i].seed == rows[i].seed);
  }
}

TEST_CASE("profiles: single method is flat at 1") {
  ExperimentConfig cfg = tiny_config();
  cfg.methods = {Method::Music};
  auto rows = run_bench(cfg);
  ProfileSeries series = profiles_from_rows(rows, "m2", 50);
  REQUIRE(series.methods.size() == 1);
  for (double v : series.profile.curves[0]) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("profiles: hand-built two-method table") {
  std::vector<ResultRow> rows;
  auto make = [](int trial, const std::string& method, double m1) {
    ResultRow r;
    r.n = 33; r.k = 2; r.snr_db = 0.0; r.trial = trial;
    r.method = method; r.m1 = m1;
    return r;
  };
  rows.push_back(make(0, "A", 1.0));
  rows.push_back(make(0, "B", 2.0));
  rows.push_back(make(1, "A", 4.0));
  rows.push_back(make(1, "B", 1.0));
  ProfileSeries series = profiles_from_rows(rows, "m1", 3);
  REQUIRE(series.methods.size() == 2);
  CHECK(series.profile.curves[0][0] == doctest::Approx(0.5));
  CHECK(series.profile.curves[1][0] == doctest::Approx(0.5));
  CHECK(series.profile.curves[0].back() == doctest::Approx(1.0));
  CHECK(series.profile.curves[1].back() == doctest::Approx(1.0));
}

TEST_CASE("profiles output row count") {
  auto rows = run_bench(tiny_config());
  ProfileSeries series = profiles_from_rows(rows, "m1", 200);
  std::stringstream ss;
  write_profiles_csv(series, ss);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "method,beta,p");
  int count = 0;
  while (std::getline(ss, line))
    if (!line.empty()) ++count;
  CHECK(count == 200 * static_cast<int>(series.methods.size()));
}

TEST_CASE("unknown metric column is rejected") {
  auto rows = run_bench(tiny_config());
  CHECK_THROWS_AS(profiles_from_rows(rows, "m9"), std::invalid_argument);
}

TEST_CASE("derive_trial_seed is stable") {
  CHECK(derive_trial_seed(1, 0) == derive_trial_seed(1, 0));
  CHECK(derive_trial_seed(1, 0) != derive_trial_seed(1, 1));
  CHECK(derive_trial_seed(1, 0) != derive_trial_seed(2, 0));
}

TEST_CASE("config file loader") {
  auto path = std::filesystem::temp_directory_path() / "linespec_bench.conf";
  {
    std::ofstream out(path);
    out << "# grid\n"
        << "n_list = 65, 129\n"
        << "k_divisors = 8\n"
        << "snr_db_list = 0, 10\n"
        << "trials = 3\n"
        << "min_sep_times_n = 0.5\n"
        << "eta = 1.2\n"
        << "methods = AST, Cadzow\n"
        << "master_seed = 17\n"
        << "threads = 2\n";
  }
  ExperimentConfig cfg = load_bench_config(path.string());
  CHECK(cfg.n_list == std::vector<int>{65, 129});
  CHECK(cfg.k_divisors == std::vector<int>{8});
  CHECK(cfg.snr_db_list == std::vector<double>{0.0, 10.0});
  CHECK(cfg.trials == 3);
  CHECK(cfg.eta == doctest::Approx(1.2));
  REQUIRE(cfg.methods.size() == 2);
  CHECK(cfg.methods[0] == Method::Ast);
  CHECK(cfg.methods[1] == Method::Cadzow);
  CHECK(cfg.master_seed == 17);
  CHECK(cfg.threads == 2);
  std::filesystem::remove(path);

  {
    std::ofstream out(path);
    out << "bogus_key = 1\n";
  }
  CHECK_THROWS_AS(load_bench_config(path.string()), std::invalid_argument);
  std::filesystem::remove(path);
}
