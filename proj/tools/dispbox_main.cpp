// Command-line front end: dispersion engines, structured test boxes,
// cover-free certification, bound evaluators and the experiment harness.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dispbox/dispersion.hpp"
#include "dispbox/errors.hpp"
#include "dispbox/experiment.hpp"
#include "dispbox/generators.hpp"
#include "dispbox/serialize.hpp"

namespace {

using namespace dispbox;

constexpr const char* kMainBoundHelp =
    "main lower bound: N(eps,d) > c*log(d)/(eps^2*log(1/eps)) with c=1/1920, "
    "valid for d>=2 and 1/4 >= eps >= 1/(4*sqrt(d))";

int cmd_disp_exact(const std::string& points_file, int max_dim, int workers) {
  PointSet xs = PointSet::read_csv_file(points_file);
  SearchConfig cfg;
  cfg.max_exact_dim = max_dim;
  cfg.workers = workers;
  DispersionResult r = exact_dispersion(xs, cfg);
  std::cout << to_json(r).dump(2) << "\n";
  return 0;
}

int cmd_disp_estimate(const std::string& points_file, int budget, std::uint64_t seed,
                      int workers) {
  PointSet xs = PointSet::read_csv_file(points_file);
  SearchConfig cfg;
  cfg.estimator_budget = budget;
  cfg.rng_seed = seed;
  cfg.workers = workers;
  DispersionResult r = estimate_dispersion(xs, cfg);
  std::cout << to_json(r).dump(2) << "\n";
  return 0;
}

int cmd_boxes_gen(int d, int k, const std::string& out, std::uint64_t cap) {
  std::ofstream f(out);
  if (!f) throw usage_error("cannot open output file: " + out);
  TestFamilyEnumerator en(d, k, cap);
  TestBoxSpec spec(d, k, {}, 0);
  std::uint64_t count = 0;
  while (en.next(spec)) {
    f << to_json(spec).dump() << "\n";
    ++count;
  }
  std::cout << "{\"boxes\": " << count << ", \"file\": \"" << out << "\"}\n";
  return 0;
}

int cmd_boxes_check_hit(const std::string& points_file, int d, double eps,
                        std::uint64_t cap, int workers) {
  PointSet xs = PointSet::read_csv_file(points_file);
  if (xs.dim() != d)
    throw usage_error("--d " + std::to_string(d) + " does not match points dimension " +
                      std::to_string(xs.dim()));
  const EpsilonBucket bucket = bucket_of_eps(eps);
  const HitCheck hit = hits_all(xs, bucket.k, cap, {}, workers);
  nlohmann::json j{{"d", d},
                   {"eps", eps},
                   {"k", bucket.k},
                   {"r", bucket.r},
                   {"family_size", hit.family_size},
                   {"hits_all", hit.all_hit}};
  j["missing_box"] = hit.missing ? to_json(*hit.missing) : nlohmann::json(nullptr);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_coverfree_certify(const std::string& family_file, int r, int workers) {
  const SetFamily fam = load_set_family(family_file);
  const CoverFreeCertificate cert = certify_cover_free(fam, r, workers);
  std::cout << to_json(cert).dump(2) << "\n";
  return 0;
}

int cmd_bounds_eval(int d, double eps, const BoundConstants& consts) {
  nlohmann::json out = nlohmann::json::array();
  bool main_in_range = true;
  try {
    BoundValue main{"main", lower_bound_main(eps, d), true, true, kMainBoundHelp};
    out.push_back(to_json(main));
  } catch (const usage_error&) {
    main_in_range = false;  // reference bounds may still apply
  }
  for (const BoundValue& v : reference_bounds(eps, d, consts)) out.push_back(to_json(v));
  nlohmann::json j{{"d", d}, {"eps", eps}, {"main_in_range", main_in_range}, {"bounds", out}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_gen_points(const std::string& kind, int d, int n, std::uint64_t seed, int k,
                   double q, int m, const std::string& out, std::uint64_t cap) {
  std::optional<PointSet> xs;
  if (kind == "uniform") {
    xs = uniform_random(n, d, seed);
  } else if (kind == "grid") {
    xs = grid_random(n, d, m, seed);
  } else if (kind == "superimposed") {
    xs = superimposed_points(d, k, n, q > 0 ? std::optional<double>(q) : std::nullopt, seed);
  } else if (kind == "greedy-hitting") {
    GreedyOptions opts;
    opts.cap = cap;
    xs = greedy_hitting(d, k, opts);
  } else {
    throw usage_error("unknown generator kind: " + kind);
  }
  xs->write_csv_file(out);
  std::cout << "{\"points\": " << xs->size() << ", \"file\": \"" << out
            << "\", \"provenance\": \"" << xs->provenance() << "\"}\n";
  return 0;
}

int cmd_reduce(const std::string& points_file, double eps, const std::string& report_file,
               std::uint64_t cap, int workers) {
  PointSet xs = PointSet::read_csv_file(points_file);
  const ReductionReport rep = run_reduction(xs, eps, cap, workers);
  if (!report_file.empty()) {
    std::ofstream f(report_file);
    if (!f) throw usage_error("cannot open report file: " + report_file);
    f << to_json(rep).dump(2) << "\n";
  }
  std::cout << to_json(rep).dump(2) << "\n";
  if (rep.claim2_violation) {
    std::cerr << "hard internal error: hits_all true but certificate refuted\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dispbox: dispersion of point sets in [0,1]^d, structured test boxes, "
      "cover-free certification and lower-bound experiments"};
  app.require_subcommand(1);

  std::string points_file, out_file, family_file, config_file, report_file = "";
  int d = 2, k = 2, n = 0, m = 7, r = 1;
  int max_dim = 4, budget = 64, workers = 0;
  double eps = 0.125, q = 0.0;
  std::uint64_t seed = 0, cap = kDefaultEnumerationCap;

  // disp exact | estimate
  auto* disp = app.add_subcommand("disp", "compute disp(X): sup volume of an empty open box");
  disp->require_subcommand(1);
  auto* dexact = disp->add_subcommand(
      "exact", "exhaustive candidate-grid search; exact up to --max-dim, exponential in d");
  dexact->add_option("--points", points_file, "CSV point file")->required();
  dexact->add_option("--max-dim", max_dim, "dimension cap for the exact search (default 4)");
  dexact->add_option("--workers", workers, "worker threads (0 = hardware)");
  dexact->callback([&] { std::exit(cmd_disp_exact(points_file, max_dim, workers)); });
  auto* dest = disp->add_subcommand(
      "estimate", "certified lower estimate via randomized seed growth to maximal empty boxes");
  dest->add_option("--points", points_file, "CSV point file")->required();
  dest->add_option("--budget", budget, "number of random seeds (default 64)");
  dest->add_option("--seed", seed, "RNG seed");
  dest->add_option("--workers", workers, "worker threads");
  dest->callback([&] { std::exit(cmd_disp_estimate(points_file, budget, seed, workers)); });

  // boxes gen | check-hit
  auto* boxes = app.add_subcommand(
      "boxes", "structured test boxes: small interval (0,2^{1-k}) on one axis, (2^{1-k},1) on "
               "2^{k-2} axes, free elsewhere");
  boxes->require_subcommand(1);
  auto* bgen = boxes->add_subcommand("gen", "enumerate the family as JSON lines (A colex, j ascending)");
  bgen->add_option("--d", d, "dimension")->required();
  bgen->add_option("--k", k, "scale: threshold 2^{1-k}, |A| = 2^{k-2}")->required();
  bgen->add_option("--out", out_file, "output file (JSON lines)")->required();
  bgen->add_option("--cap", cap, "enumeration cap (default 1e7)");
  bgen->callback([&] { std::exit(cmd_boxes_gen(d, k, out_file, cap)); });
  auto* bhit = boxes->add_subcommand(
      "check-hit", "pattern-based check that every family box contains a point");
  bhit->add_option("--points", points_file, "CSV point file")->required();
  bhit->add_option("--d", d, "dimension (validated against the file)")->required();
  bhit->add_option("--eps", eps, "target dispersion; k from 2^{-(k+1)} < eps <= 2^{-k}")->required();
  bhit->add_option("--cap", cap, "enumeration cap");
  bhit->add_option("--workers", workers, "worker threads");
  bhit->callback([&] { std::exit(cmd_boxes_check_hit(points_file, d, eps, cap, workers)); });

  // coverfree certify
  auto* coverfree = app.add_subcommand(
      "coverfree", "r-cover-free certification: no set contained in the union of r others");
  coverfree->require_subcommand(1);
  auto* certify = coverfree->add_subcommand(
      "certify", "exact per-set minimum covers by branch-and-bound; certificate as JSON");
  certify->add_option("--family", family_file, "JSON {ground_size, sets:[[...]]}")->required();
  certify->add_option("--r", r, "cover-free order r >= 1")->required();
  certify->add_option("--workers", workers, "worker threads");
  certify->callback([&] { std::exit(cmd_coverfree_certify(family_file, r, workers)); });

  // bounds eval
  BoundConstants consts;
  double c_bc = 0.0, c_uvl = 0.0, c_c1 = 0.0, c_c2 = 0.0;
  std::int64_t corollary_n = 0;
  auto* bounds = app.add_subcommand("bounds", "evaluate lower/upper bound formulas for N(eps,d)");
  auto* beval = bounds->add_subcommand("eval", std::string(kMainBoundHelp) +
      "; trivial: 1/eps-1; AHR: log2(d)/(8*eps) for eps<1/4; Bukh-Chao upper: C*d^2*log(d)/eps; "
      "UV-Litvak upper: C*log(d)*log(1/eps)/eps^2; dispersion corollary: "
      "disp*(n,d) >= c2*(log(d)/n)^{1/2}*(log(n/log d))^{-1/2} for 2*log(d) <= n <= c1*d; "
      "Alon-Asodi cover-free ground bound: (1/10)*r^2*log(d-r/2)/log(r) for 2 <= r <= 2*sqrt(d): "
      "all log ratios are base-invariant, computed with natural logs");
  beval->add_option("--d", d, "dimension")->required();
  beval->add_option("--eps", eps, "epsilon in (0,1)")->required();
  beval->add_option("--C-bc", c_bc, "caller-supplied constant of the Bukh-Chao upper bound");
  beval->add_option("--C-uvl", c_uvl, "caller-supplied constant of the UV-Litvak upper bound");
  beval->add_option("--c1", c_c1, "corollary validity constant (requires n <= c1*d)");
  beval->add_option("--c2", c_c2, "corollary scale constant");
  beval->add_option("--n", corollary_n, "point count for the corollary");
  beval->callback([&] {
    if (c_bc > 0) consts.bc_upper = c_bc;
    if (c_uvl > 0) consts.uvl_upper = c_uvl;
    if (c_c1 > 0) consts.corollary_c1 = c_c1;
    if (c_c2 > 0) consts.corollary_c2 = c_c2;
    if (corollary_n > 0) consts.n = corollary_n;
    std::exit(cmd_bounds_eval(d, eps, consts));
  });

  // gen points
  std::string kind = "uniform";
  auto* gen = app.add_subcommand("gen", "point-set generators (seeded, reproducible)");
  gen->require_subcommand(1);
  auto* gpoints = gen->add_subcommand(
      "points", "uniform | grid (coords from {1/(m+1)..m/(m+1)}) | superimposed (pattern points "
                "at 2^{-k} / 1-2^{-k}) | greedy-hitting (covers every test box)");
  gpoints->add_option("--kind", kind, "uniform|grid|superimposed|greedy-hitting")->required();
  gpoints->add_option("--d", d, "dimension")->required();
  gpoints->add_option("--n", n, "number of points");
  gpoints->add_option("--seed", seed, "RNG seed (recorded in provenance)");
  gpoints->add_option("--k", k, "scale for superimposed/greedy-hitting");
  gpoints->add_option("--q", q, "small-coordinate probability (default 1/(2^{k-2}+1))");
  gpoints->add_option("--m", m, "grid resolution (grid kind, m >= 2)");
  gpoints->add_option("--cap", cap, "enumeration cap (greedy-hitting)");
  gpoints->add_option("--out", out_file, "output CSV")->required();
  gpoints->callback(
      [&] { std::exit(cmd_gen_points(kind, d, n, seed, k, q, m, out_file, cap)); });

  // reduce
  auto* reduce = app.add_subcommand(
      "reduce", "end-to-end reduction: bucket k from eps, hit check, family extraction, "
                "cover-free certification at r=2^{k-2}, bound comparisons");
  reduce->add_option("--points", points_file, "CSV point file")->required();
  reduce->add_option("--eps", eps, "epsilon, 1/4 >= eps >= 1/(4*sqrt(d))")->required();
  reduce->add_option("--report", report_file, "write the report JSON here");
  reduce->add_option("--cap", cap, "enumeration cap");
  reduce->add_option("--workers", workers, "worker threads");
  reduce->callback([&] { std::exit(cmd_reduce(points_file, eps, report_file, cap, workers)); });

  // experiment lower-bound | upper-bound | claims
  auto* experiment = app.add_subcommand("experiment", "sweeps and the claims suite");
  experiment->require_subcommand(1);
  std::vector<std::string> overrides;
  bool fault = false;
  std::string out_dir_flag;
  auto* elower = experiment->add_subcommand(
      "lower-bound", "per (d,k,seed): superimposed+greedy hitting set, full reduction, CSV+JSON");
  auto* eupper = experiment->add_subcommand(
      "upper-bound", "per (n,seed): grid points, estimator with test-box probes, success fractions");
  auto* eclaims = experiment->add_subcommand(
      "claims", "exact Claim-1 scan, Claim-2 certification property, cover-free ground bound "
                "search, log-chain scan; --inject-threshold-fault flips the strict hit-check "
                "comparison and expects the property to fail");
  for (CLI::App* sub : {elower, eupper, eclaims}) {
    sub->add_option("--config", config_file, "key=value config file; flags win");
    sub->add_option("--set", overrides, "config override key=value (repeatable)")
        ->take_all();
    sub->add_option("--out-dir", out_dir_flag, "output directory (default $DISPBOX_OUTDIR or .)");
    sub->add_option("--seed", seed, "base seed override");
    sub->add_option("--workers", workers, "worker threads");
  }
  eclaims->add_flag("--inject-threshold-fault", fault, "mutation-sensitivity mode");

  auto run_experiment = [&](const std::string& which) {
    ExperimentConfig cfg;
    if (!config_file.empty()) cfg = ExperimentConfig::load(config_file);
    if (const char* env = std::getenv("DISPBOX_OUTDIR")) cfg.out_dir = env;
    for (const auto& ov : overrides) {
      const auto eq = ov.find('=');
      if (eq == std::string::npos)
        throw usage_error("--set expects key=value, got '" + ov + "'");
      cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (!out_dir_flag.empty()) cfg.out_dir = out_dir_flag;
    if (seed != 0) cfg.base_seed = seed;
    if (workers != 0) cfg.workers = workers;

    if (which == "lower-bound") {
      const SweepResult res = run_lower_bound_sweep(cfg, std::cerr);
      std::cout << "{\"rows\": " << res.rows << ", \"csv\": \"" << res.csv_path
                << "\", \"summary\": \"" << res.summary_path << "\", \"ok\": " << (res.ok ? "true" : "false")
                << "}\n";
      std::exit(res.ok ? 0 : 1);
    }
    if (which == "upper-bound") {
      const SweepResult res = run_upper_bound_sweep(cfg, std::cerr);
      std::cout << "{\"rows\": " << res.rows << ", \"csv\": \"" << res.csv_path
                << "\", \"summary\": \"" << res.summary_path << "\", \"ok\": " << (res.ok ? "true" : "false")
                << "}\n";
      std::exit(res.ok ? 0 : 1);
    }
    const ClaimsResult res = run_claims_suite(cfg, fault, std::cerr);
    if (!res.detail.empty()) std::cerr << res.detail;
    std::cout << (res.pass() ? "claims suite: PASS" : "claims suite: FAIL") << "\n";
    std::exit(res.pass() ? 0 : 1);
  };
  elower->callback([&] { run_experiment("lower-bound"); });
  eupper->callback([&] { run_experiment("upper-bound"); });
  eclaims->callback([&] { run_experiment("claims"); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const internal_check_failure& e) {
    std::cerr << "internal check failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
