#include "dispbox/experiment.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispbox/errors.hpp"
#include "dispbox/generators.hpp"

using namespace dispbox;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config file parsing and overrides") {
  const auto dir = temp_dir("dispbox_cfg_test");
  const auto path = (dir / "sweep.cfg").string();
  {
    std::ofstream f(path);
    f << "# harness config\n"
         "d_list = 8, 16\n"
         "k_list = 2\n"
         "seeds = 1,2,3\n"
         "grid_m = 9\n"
         "out_dir = " << (dir / "out").string() << "\n";
  }
  ExperimentConfig cfg = ExperimentConfig::load(path);
  CHECK(cfg.d_list == std::vector<int>{8, 16});
  CHECK(cfg.k_list == std::vector<int>{2});
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(cfg.grid_m == 9);

  cfg.set("grid_m", "7");  // flag override wins
  CHECK(cfg.grid_m == 7);
  CHECK_THROWS_WITH_AS(cfg.set("no_such_key", "1"), doctest::Contains("no_such_key"),
                       usage_error);
  CHECK_THROWS_AS(cfg.set("grid_m", "abc"), usage_error);

  const auto bad = (dir / "bad.cfg").string();
  {
    std::ofstream f(bad);
    f << "d_list 8\n";
  }
  CHECK_THROWS_WITH_AS(ExperimentConfig::load(bad), doctest::Contains("line 1"), usage_error);
}

TEST_CASE("default_claim2_n is comfortable") {
  CHECK(default_claim2_n(8, 2) >= 32);
  CHECK(default_claim2_n(32, 3) >= default_claim2_n(8, 3));
  CHECK(default_claim2_n(32, 3) <= 400);  // stays tractable for certification
}

TEST_CASE("superimposed_hitting verifies and reports attempts") {
  const HittingSetResult hs = superimposed_hitting(8, 2, default_claim2_n(8, 2), 0.0, 77,
                                                   kDefaultEnumerationCap);
  CHECK(hs.attempts >= 1);
  CHECK(hits_all(hs.points, 2).all_hit);
}

TEST_CASE("superimposed_topped always hits") {
  // n=2 is far too small for a random hit, so the top-up must kick in.
  int added = 0;
  const PointSet xs = superimposed_topped(8, 2, 2, 0.0, 5, kDefaultEnumerationCap, &added);
  CHECK(added > 0);
  CHECK(hits_all(xs, 2).all_hit);
  CHECK(xs.size() == 2 + static_cast<std::size_t>(added));
  CHECK(xs.provenance().find("topup") != std::string::npos);
}

TEST_CASE("lower-bound sweep writes deterministic reports") {
  const auto dir = temp_dir("dispbox_lower_sweep");
  ExperimentConfig cfg;
  cfg.d_list = {8, 16};
  cfg.k_list = {2};
  cfg.seeds = {1, 2};
  cfg.out_dir = (dir / "a").string();
  std::ostringstream log;
  const SweepResult res = run_lower_bound_sweep(cfg, log);
  CHECK(res.ok);
  CHECK(res.rows == 4);
  const std::string csv1 = slurp(res.csv_path);
  CHECK(csv1.find("d,k,eps,seed,n,") == 0);
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 5);  // header + 4 rows

  cfg.out_dir = (dir / "b").string();
  const SweepResult res2 = run_lower_bound_sweep(cfg, log);
  CHECK(slurp(res2.csv_path) == csv1);  // identical bytes, timestamp lives in the JSON only

  const std::string summary = slurp(res.summary_path);
  CHECK(summary.find("generated_at") != std::string::npos);
  CHECK(summary.find("\"all_ok\": true") != std::string::npos);
}

TEST_CASE("lower-bound sweep validates configuration before running") {
  const auto dir = temp_dir("dispbox_sweep_validate");
  ExperimentConfig cfg;
  cfg.out_dir = dir.string();
  cfg.seeds = {1};
  cfg.d_list = {};
  std::ostringstream log;
  CHECK_THROWS_AS(run_lower_bound_sweep(cfg, log), usage_error);

  cfg.d_list = {4};
  cfg.k_list = {4};  // 2^{k-2} = 4 >= d
  CHECK_THROWS_WITH_AS(run_lower_bound_sweep(cfg, log), doctest::Contains("2^{k-2} < d"),
                       usage_error);

  cfg.d_list = {4};
  cfg.k_list = {3};  // eps = 1/8 equals 1/(4*sqrt(4)): boundary is in range
  CHECK_NOTHROW(run_lower_bound_sweep(cfg, log));

  cfg.d_list = {2};
  cfg.k_list = {3};  // eps = 1/8 below 1/(4*sqrt(2))
  CHECK_THROWS_WITH_AS(run_lower_bound_sweep(cfg, log), doctest::Contains("1/(4*sqrt(d))"),
                       usage_error);
}

TEST_CASE("upper-bound sweep records success fractions") {
  const auto dir = temp_dir("dispbox_upper_sweep");
  ExperimentConfig cfg;
  cfg.sweep_d = 4;
  cfg.sweep_eps = 0.25;
  cfg.grid_m = 3;  // slab volume 1/4 <= eps: achievable
  cfg.sweep_n_list = {0, 200};
  cfg.seeds = {1, 2, 3, 4};
  cfg.estimator_budget = 24;
  cfg.out_dir = (dir / "out").string();
  std::ostringstream log;
  const SweepResult res = run_upper_bound_sweep(cfg, log);
  CHECK(res.ok);
  CHECK(res.rows == 8);
  const std::string csv = slurp(res.csv_path);
  // n=0: the empty set has dispersion 1, so success must be 0 on every seed.
  CHECK(csv.find("4,0.25,3,0,1,1,0") != std::string::npos);
  const std::string summary = slurp(res.summary_path);
  CHECK(summary.find("success_fraction") != std::string::npos);
  CHECK(summary.find("empirical") != std::string::npos);
}

TEST_CASE("claims suite passes on a reduced configuration") {
  ExperimentConfig cfg;
  cfg.claim1_max_d = 10;
  cfg.claim2_trials = 6;
  cfg.claim2_d = {8};
  cfg.claim2_k = {2, 3};
  cfg.aa_families = 40;
  cfg.log_scan_max_d = 20000;
  std::ostringstream log;
  const ClaimsResult res = run_claims_suite(cfg, false, log);
  CHECK(res.claim1_ok);
  CHECK(res.claim2_ok);
  CHECK(res.alon_asodi_ok);
  CHECK(res.log_chain_ok);
  CHECK(res.pass());
  CHECK(res.claim2_trials_run == 6);
}

TEST_CASE("claims suite fault injection detects the flipped comparison") {
  ExperimentConfig cfg;
  cfg.claim1_max_d = 6;
  cfg.claim2_trials = 10;
  cfg.claim2_d = {8};
  cfg.claim2_k = {2};
  cfg.aa_families = 5;
  cfg.log_scan_max_d = 1000;
  std::ostringstream log;
  const ClaimsResult res = run_claims_suite(cfg, true, log);
  CHECK(res.fault_mode);
  CHECK(res.fault_detected);
  CHECK(res.pass());

  const FaultInjectionResult fi = run_fault_injection(cfg);
  CHECK(fi.detected);
  CHECK(fi.detail.find("non-strict") != std::string::npos);
}
