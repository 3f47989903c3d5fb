#include "dispbox/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dispbox/dispersion.hpp"
#include "dispbox/errors.hpp"
#include "dispbox/generators.hpp"
#include "dispbox/rng.hpp"
#include "dispbox/serialize.hpp"

namespace dispbox {

namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : v) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
  std::vector<int> out;
  for (const auto& s : split_list(v)) {
    try {
      out.push_back(std::stoi(s));
    } catch (...) {
      throw usage_error("config key '" + key + "': cannot parse integer '" + s + "'");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& v, const std::string& key) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split_list(v)) {
    try {
      out.push_back(std::stoull(s));
    } catch (...) {
      throw usage_error("config key '" + key + "': cannot parse integer '" + s + "'");
    }
  }
  return out;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i) {
  // splitmix64 finalizer over base ^ index keeps derived streams well apart
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bool blank = true;
      for (char ch : line) blank &= std::isspace(static_cast<unsigned char>(ch)) != 0;
      if (blank) continue;
      throw usage_error(path + ": line " + std::to_string(row) + ": expected key = value");
    }
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    cfg.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
  return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "d_list") d_list = parse_int_list(value, key);
    else if (key == "k_list") k_list = parse_int_list(value, key);
    else if (key == "seeds") seeds = parse_u64_list(value, key);
    else if (key == "n_per_cell") n_per_cell = std::stoi(value);
    else if (key == "q") q = std::stod(value);
    else if (key == "sweep_d") sweep_d = std::stoi(value);
    else if (key == "sweep_eps") sweep_eps = std::stod(value);
    else if (key == "grid_m") grid_m = std::stoi(value);
    else if (key == "sweep_n_list") sweep_n_list = parse_int_list(value, key);
    else if (key == "sweep_c") sweep_c = std::stod(value);
    else if (key == "estimator_budget") estimator_budget = std::stoi(value);
    else if (key == "claim1_max_d") claim1_max_d = std::stoi(value);
    else if (key == "claim1_k") claim1_k = parse_int_list(value, key);
    else if (key == "claim2_trials") claim2_trials = std::stoi(value);
    else if (key == "claim2_d") claim2_d = parse_int_list(value, key);
    else if (key == "claim2_k") claim2_k = parse_int_list(value, key);
    else if (key == "aa_families") aa_families = std::stoi(value);
    else if (key == "log_scan_max_d") log_scan_max_d = std::stoi(value);
    else if (key == "base_seed") base_seed = std::stoull(value);
    else if (key == "cap") cap = std::stoull(value);
    else if (key == "workers") workers = std::stoi(value);
    else if (key == "out_dir") out_dir = value;
    else throw usage_error("unknown config key '" + key + "'");
  } catch (const usage_error&) {
    throw;
  } catch (...) {
    throw usage_error("config key '" + key + "': cannot parse value '" + value + "'");
  }
}

int default_claim2_n(int d, int k) {
  const double r = static_cast<double>(std::uint64_t(1) << (k - 2));
  const double q = 1.0 / (r + 1.0);
  const double hit = q * std::pow(1.0 - q, r);  // per-point hit probability of one box
  const double family = static_cast<double>(test_family_size(d, k));
  // family * (1-hit)^n <= 1e-7  =>  comfortable success probability per draw
  const double n = (std::log(family) + std::log(1e7)) / -std::log1p(-hit);
  return std::max(32, static_cast<int>(std::ceil(n)));
}

HittingSetResult superimposed_hitting(int d, int k, int n, double q_or_0,
                                      std::uint64_t seed, std::uint64_t cap,
                                      int max_attempts, int workers) {
  std::optional<double> q;
  if (q_or_0 > 0.0) q = q_or_0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    PointSet xs = superimposed_points(d, k, n, q, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (hits_all(xs, k, cap, {}, workers).all_hit) return {std::move(xs), attempt + 1};
  }
  throw internal_check_failure("superimposed_hitting: no hitting set after " +
                               std::to_string(max_attempts) + " draws (d=" + std::to_string(d) +
                               ", k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
}

PointSet superimposed_topped(int d, int k, int n, double q_or_0, std::uint64_t seed,
                             std::uint64_t cap, int* added_out, int workers) {
  (void)workers;
  std::optional<double> q;
  if (q_or_0 > 0.0) q = q_or_0;
  PointSet xs = superimposed_points(d, k, n, q, seed);
  const std::vector<int> missing = unhit_small_axes(xs, k, cap);
  const double small = std::ldexp(1.0, -k);
  const double large = 1.0 - std::ldexp(1.0, -k);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int j : missing) {
    std::fill(p.begin(), p.end(), large);
    p[static_cast<std::size_t>(j)] = small;
    xs.add(p);
  }
  if (!missing.empty())
    xs.set_provenance(xs.provenance() + "+topup(added=" + std::to_string(missing.size()) + ")");
  if (added_out) *added_out = static_cast<int>(missing.size());
  return xs;
}

SweepResult run_lower_bound_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  SweepResult res;
  if (cfg.d_list.empty() || cfg.k_list.empty() || cfg.seeds.empty())
    throw usage_error("lower-bound sweep: d_list, k_list and seeds must be nonempty");
  // Validate every cell before any run.
  for (int k : cfg.k_list) {
    if (k < 2) throw usage_error("lower-bound sweep: k >= 2 violated (k=" + std::to_string(k) + ")");
    for (int d : cfg.d_list) {
      if (k - 2 >= 62 || (std::uint64_t(1) << (k - 2)) >= static_cast<std::uint64_t>(d))
        throw usage_error("lower-bound sweep: 2^{k-2} < d violated (d=" + std::to_string(d) +
                          ", k=" + std::to_string(k) + ")");
      test_family_size(d, k, cfg.cap);
      lower_bound_main(std::ldexp(1.0, -k), d);  // throws when outside the valid range
    }
  }

  std::filesystem::create_directories(cfg.out_dir);
  res.csv_path = cfg.out_dir + "/lower_bound_sweep.csv";
  res.summary_path = cfg.out_dir + "/lower_bound_sweep.json";
  std::ofstream csv(res.csv_path);
  if (!csv) throw usage_error("cannot open " + res.csv_path);
  csv << "d,k,eps,seed,n,topup_added,family_size,hits_all,r,certified,min_cover,"
         "main_lower,intermediate_aa,trivial,ahr,exceeds_main,exceeds_intermediate,"
         "exceeds_trivial,exceeds_ahr\n";

  res.ok = true;
  nlohmann::json cells = nlohmann::json::array();
  for (int d : cfg.d_list) {
    for (int k : cfg.k_list) {
      const double eps = std::ldexp(1.0, -k);
      bool all_certified = true;
      bool all_exceed_main = true;
      std::size_t min_n = SIZE_MAX;
      for (std::uint64_t seed : cfg.seeds) {
        const int n = cfg.n_per_cell > 0 ? cfg.n_per_cell : default_claim2_n(d, k);
        int added = 0;
        PointSet xs = superimposed_topped(d, k, n, cfg.q, seed, cfg.cap, &added, cfg.workers);
        ReductionReport rep = run_reduction(xs, eps, cfg.cap, cfg.workers);
        if (rep.claim2_violation) {
          res.ok = false;
          res.error = "hard internal error: hits_all true but certificate refuted (d=" +
                      std::to_string(d) + ", k=" + std::to_string(k) +
                      ", seed=" + std::to_string(seed) + ")";
          log << res.error << "\n";
        }
        std::string min_cover = "inf";
        if (rep.certificate) {
          std::optional<int> mc;
          for (const auto& c : rep.certificate->per_j)
            if (c.number && (!mc || *c.number < *mc)) mc = *c.number;
          if (mc) min_cover = std::to_string(*mc);
        }
        csv << d << ',' << k << ',' << fmt_double(eps) << ',' << seed << ',' << rep.n << ','
            << added << ',' << rep.family_size << ',' << (rep.hits_all ? 1 : 0) << ',' << rep.r
            << ',' << (rep.certificate && rep.certificate->certified ? 1 : 0) << ',' << min_cover
            << ',' << fmt_double(rep.main_lower) << ','
            << (rep.intermediate_aa ? fmt_double(*rep.intermediate_aa) : "") << ','
            << fmt_double(rep.trivial_lower) << ','
            << (rep.ahr_lower ? fmt_double(*rep.ahr_lower) : "") << ','
            << (rep.exceeds_main ? 1 : 0) << ','
            << (rep.exceeds_intermediate ? (*rep.exceeds_intermediate ? "1" : "0") : "") << ','
            << (rep.exceeds_trivial ? 1 : 0) << ','
            << (rep.exceeds_ahr ? (*rep.exceeds_ahr ? "1" : "0") : "") << "\n";
        ++res.rows;
        all_certified &= rep.certificate && rep.certificate->certified;
        all_exceed_main &= rep.exceeds_main;
        min_n = std::min(min_n, rep.n);
      }
      cells.push_back({{"d", d},
                       {"k", k},
                       {"eps", eps},
                       {"all_certified", all_certified},
                       {"all_exceed_main", all_exceed_main},
                       {"min_n", min_n}});
      log << "lower-bound cell d=" << d << " k=" << k << ": certified=" << all_certified
          << " exceed_main=" << all_exceed_main << "\n";
    }
  }

  nlohmann::json summary{{"generated_at", timestamp_now()},
                         {"experiment", "lower-bound"},
                         {"rows", res.rows},
                         {"csv", res.csv_path},
                         {"cells", cells},
                         {"all_ok", res.ok}};
  std::ofstream js(res.summary_path);
  js << summary.dump(2) << "\n";
  return res;
}

SweepResult run_upper_bound_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  SweepResult res;
  const int d = cfg.sweep_d;
  const double eps = cfg.sweep_eps;
  const EpsilonBucket bucket = bucket_of_eps(eps);
  if (cfg.grid_m < 2) throw usage_error("upper-bound sweep: grid_m must be >= 2");
  if (cfg.seeds.empty()) throw usage_error("upper-bound sweep: seeds must be nonempty");
  if (1.0 / (cfg.grid_m + 1.0) > eps)
    log << "warning: grid resolution m=" << cfg.grid_m << " leaves the boundary slab of volume "
        << fmt_double(1.0 / (cfg.grid_m + 1.0)) << " > eps=" << fmt_double(eps)
        << " always empty; success fraction will be ~0\n";

  std::vector<int> n_list = cfg.sweep_n_list;
  if (n_list.empty()) {
    n_list.push_back(static_cast<int>(std::ceil(
        cfg.sweep_c * std::log(static_cast<double>(d)) * std::log(1.0 / eps) / (eps * eps))));
  }

  // Structured test boxes double as probes when the family is small enough.
  std::vector<AxisBox> probes;
  try {
    if (test_family_size(d, bucket.k, 100000) <= 100000) {
      TestFamilyEnumerator en(d, bucket.k, 100000);
      TestBoxSpec spec(d, bucket.k, {}, 0);
      while (en.next(spec)) probes.push_back(test_box(spec));
    }
  } catch (const cap_exceeded&) {
  }

  std::filesystem::create_directories(cfg.out_dir);
  res.csv_path = cfg.out_dir + "/upper_bound_sweep.csv";
  res.summary_path = cfg.out_dir + "/upper_bound_sweep.json";
  std::ofstream csv(res.csv_path);
  if (!csv) throw usage_error("cannot open " + res.csv_path);
  csv << "d,eps,m,n,seed,estimate,success\n";

  nlohmann::json rows_summary = nlohmann::json::array();
  double prev_fraction = -1.0;
  bool trend_ok = true;
  for (int n : n_list) {
    int successes = 0;
    for (std::uint64_t seed : cfg.seeds) {
      PointSet xs = grid_random(n, d, cfg.grid_m, seed);
      SearchConfig sc;
      sc.estimator_budget = cfg.estimator_budget;
      sc.rng_seed = derive_seed(seed, 0xE57Dull);
      sc.workers = cfg.workers;
      DispersionResult est = estimate_dispersion(xs, sc, probes);
      const bool success = est.value <= eps;
      successes += success ? 1 : 0;
      csv << d << ',' << fmt_double(eps) << ',' << cfg.grid_m << ',' << n << ',' << seed << ','
          << fmt_double(est.value) << ',' << (success ? 1 : 0) << "\n";
      ++res.rows;
    }
    const double fraction = static_cast<double>(successes) / static_cast<double>(cfg.seeds.size());
    rows_summary.push_back({{"n", n}, {"success_fraction", fraction}});
    log << "upper-bound n=" << n << ": success fraction " << fraction << "\n";
    if (fraction + 1e-12 < prev_fraction) {
      trend_ok = false;
      log << "warning: success fraction decreased when n grew (soft check only)\n";
    }
    prev_fraction = fraction;
  }

  nlohmann::json summary{{"generated_at", timestamp_now()},
                         {"experiment", "upper-bound"},
                         {"d", d},
                         {"eps", eps},
                         {"m", cfg.grid_m},
                         {"estimator_budget", cfg.estimator_budget},
                         {"per_n", rows_summary},
                         {"monotone_trend", trend_ok},
                         {"note", "empirical illustration; success = lower-estimate <= eps"}};
  std::ofstream js(res.summary_path);
  js << summary.dump(2) << "\n";
  res.ok = true;
  return res;
}

namespace {

// Pattern points whose small coordinates sit exactly AT the threshold 2^{1-k}.
// Under the correct strict comparison these hit no box through those axes;
// only the injected non-strict fault "sees" them as hits.
PointSet at_threshold_points(int d, int k, int n, double q, std::uint64_t seed) {
  const double at = std::ldexp(1.0, 1 - k);
  const double large = 1.0 - std::ldexp(1.0, -k);
  PointSet xs(d, "at-threshold(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                     ",k=" + std::to_string(k) + ",seed=" + std::to_string(seed) + ")");
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (auto& c : p) c = rng.next_unit() < q ? at : large;
    xs.add(p);
  }
  return xs;
}

}  // namespace

Claim1ScanResult run_claim1_scan(int max_d, const std::vector<int>& k_list) {
  Claim1ScanResult res;
  res.ok = true;
  std::ostringstream detail;
  for (int k : k_list) {
    const int r = static_cast<int>(std::uint64_t(1) << (k - 2));
    for (int d = std::max(2, r + 1); d <= max_d; ++d) {
      const Claim1Check c = verify_claim1(d, k);
      if (!c.holds || !c.convexity_grid_ok) {
        res.ok = false;
        detail << "claim1 failed at d=" << d << " k=" << k << " a=" << c.worst_a
               << " volume=" << c.worst_volume.to_string() << "\n";
      }
    }
  }
  res.detail = detail.str();
  return res;
}

namespace {

std::vector<std::pair<int, int>> claim2_cells(const ExperimentConfig& cfg) {
  std::vector<std::pair<int, int>> cells;
  for (int d : cfg.claim2_d)
    for (int k : cfg.claim2_k)
      if (k >= 2 && k - 2 < 62 && (std::uint64_t(1) << (k - 2)) < static_cast<std::uint64_t>(d))
        cells.emplace_back(d, k);
  if (cells.empty()) throw usage_error("claims suite: no valid (d,k) cells configured");
  return cells;
}

}  // namespace

Claim2PropertyResult run_claim2_property(const ExperimentConfig& cfg, std::ostream& log) {
  const auto cells = claim2_cells(cfg);
  Claim2PropertyResult res;
  res.all_certified = true;
  std::ostringstream detail;
  for (int t = 0; t < cfg.claim2_trials; ++t) {
    const auto [d, k] = cells[static_cast<std::size_t>(t) % cells.size()];
    const int r = static_cast<int>(std::uint64_t(1) << (k - 2));
    const int n = cfg.n_per_cell > 0 ? cfg.n_per_cell : default_claim2_n(d, k);
    const std::uint64_t seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(t));
    HittingSetResult hs = superimposed_hitting(d, k, n, cfg.q, seed, cfg.cap, 64, cfg.workers);
    res.regenerations += hs.attempts - 1;
    const CoverFreeCertificate cert =
        certify_cover_free(extract_family(hs.points, k), r, cfg.workers);
    res.trials.push_back({d, k, static_cast<int>(hs.points.size()), seed, hs.attempts,
                          cert.certified});
    if (!cert.certified) {
      res.all_certified = false;
      detail << "claim2 REFUTED on verified hitting set: d=" << d << " k=" << k << " trial=" << t
             << " j=" << *cert.refuting_j << "\n";
    }
    if ((t + 1) % 50 == 0) log << "claim2: " << (t + 1) << "/" << cfg.claim2_trials << " trials\n";
  }
  res.detail = detail.str();
  return res;
}

AaSearchResult run_aa_search(const ExperimentConfig& cfg) {
  AaSearchResult res;
  res.ok = true;
  std::ostringstream detail;
  Rng rng(derive_seed(cfg.base_seed, 0xAA));
  for (int f = 0; f < cfg.aa_families && res.ok; ++f) {
    const int d = 2 + static_cast<int>(rng.next_below(63));  // 2..64
    const int m = 2 + static_cast<int>(rng.next_below(47));  // 2..48
    const double p = 0.05 + 0.55 * rng.next_unit();
    SetFamily fam;
    fam.ground_size = m;
    fam.sets.assign(static_cast<std::size_t>(d), {});
    for (int j = 0; j < d; ++j)
      for (int e = 0; e < m; ++e)
        if (rng.next_unit() < p) fam.sets[static_cast<std::size_t>(j)].push_back(e);
    ++res.families;

    std::optional<int> min_cover;
    for (int j = 0; j < d; ++j) {
      const CoverResult c = cover_number(fam, j);
      if (c.number && (!min_cover || *c.number < *min_cover)) min_cover = *c.number;
    }
    // Certified at r iff min cover > r; all-infinite covers certify every r.
    const int max_certified_r = min_cover ? *min_cover - 1 : INT_MAX;
    int rmax = 0;
    while ((rmax + 1) * (rmax + 1) <= 4 * d) ++rmax;  // floor(2 sqrt(d))
    for (int r = 2; r <= std::min(max_certified_r, rmax); ++r) {
      if (!(d - 0.5 * r > 1.0)) continue;
      const double bound = alon_asodi_bound(d, r);
      ++res.checks;
      if (!(static_cast<double>(m) > bound)) {
        res.ok = false;
        detail << "cover-free ground bound violated: d=" << d << " m=" << m << " r=" << r
               << " bound=" << bound << "\nfamily: " << to_json(fam).dump() << "\n";
      }
    }
  }
  res.detail = detail.str();
  return res;
}

bool run_log_chain_scan(int max_d, int* first_fail_d) {
  for (int d = 2; d <= max_d; ++d) {
    const double lhs = std::log(static_cast<double>(d) - std::sqrt(static_cast<double>(d)) / 2.0);
    if (!(lhs >= std::log(static_cast<double>(d)) / 3.0)) {
      if (first_fail_d) *first_fail_d = d;
      return false;
    }
  }
  return true;
}

FaultInjectionResult run_fault_injection(const ExperimentConfig& cfg) {
  const auto cells = claim2_cells(cfg);
  FaultInjectionResult res;
  std::ostringstream detail;
  const int max_trials = std::min(cfg.claim2_trials, 20);
  for (int t = 0; t < max_trials && !res.detected; ++t) {
    const auto [d, k] = cells[static_cast<std::size_t>(t) % cells.size()];
    const int r = static_cast<int>(std::uint64_t(1) << (k - 2));
    const int n = cfg.n_per_cell > 0 ? cfg.n_per_cell : default_claim2_n(d, k);
    const double q = cfg.q > 0.0 ? cfg.q : 1.0 / (static_cast<double>(r) + 1.0);
    PointSet xs = at_threshold_points(
        d, k, n, q, derive_seed(cfg.base_seed ^ 0xFA171ull, static_cast<std::uint64_t>(t)));
    ++res.trials;
    const HitCheck faulty = hits_all(xs, k, cfg.cap, {.nonstrict_small = true}, cfg.workers);
    const HitCheck strict = hits_all(xs, k, cfg.cap, {}, cfg.workers);
    if (strict.all_hit) continue;  // the correct check must reject at-threshold data
    if (!faulty.all_hit) continue;
    const CoverFreeCertificate cert = certify_cover_free(extract_family(xs, k), r, cfg.workers);
    if (!cert.certified) {
      res.detected = true;
      detail << "fault detected: d=" << d << " k=" << k << " trial=" << t
             << ": non-strict hit check accepted a set whose family refutes at r=" << r << "\n";
    }
  }
  res.detail = detail.str();
  return res;
}

ClaimsResult run_claims_suite(const ExperimentConfig& cfg, bool inject_threshold_fault,
                              std::ostream& log) {
  ClaimsResult res;
  res.fault_mode = inject_threshold_fault;
  std::ostringstream detail;

  const Claim1ScanResult c1 = run_claim1_scan(cfg.claim1_max_d, cfg.claim1_k);
  res.claim1_ok = c1.ok;
  detail << c1.detail;
  log << "claim1 exact scan: " << (c1.ok ? "ok" : "FAILED") << "\n";

  if (!inject_threshold_fault) {
    const Claim2PropertyResult c2 = run_claim2_property(cfg, log);
    res.claim2_ok = c2.all_certified;
    res.claim2_trials_run = static_cast<int>(c2.trials.size());
    res.claim2_regenerations = c2.regenerations;
    detail << c2.detail;
    log << "claim2 property (" << res.claim2_trials_run
        << " hitting sets): " << (res.claim2_ok ? "ok" : "FAILED") << " ("
        << res.claim2_regenerations << " regenerations)\n";
  } else {
    res.claim2_ok = true;
    const FaultInjectionResult fi = run_fault_injection(cfg);
    res.fault_detected = fi.detected;
    res.claim2_trials_run = fi.trials;
    detail << fi.detail;
    log << "claim2 mutation check: "
        << (fi.detected ? "fault detected (expected)" : "FAULT NOT DETECTED") << "\n";
  }

  const AaSearchResult aa = run_aa_search(cfg);
  res.alon_asodi_ok = aa.ok;
  detail << aa.detail;
  log << "cover-free ground bound: " << (aa.ok ? "ok" : "VIOLATED") << " (" << aa.checks
      << " certified (family, r) pairs checked over " << aa.families << " families)\n";

  int fail_d = 0;
  res.log_chain_ok = run_log_chain_scan(cfg.log_scan_max_d, &fail_d);
  if (!res.log_chain_ok) detail << "log chain failed at d=" << fail_d << "\n";
  log << "log(d - sqrt(d)/2) >= log(d)/3 scan up to d=" << cfg.log_scan_max_d << ": "
      << (res.log_chain_ok ? "ok" : "FAILED") << "\n";

  res.detail = detail.str();
  return res;
}

}  // namespace dispbox
