#include "etoff_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "etoff/decision.hpp"
#include "etoff/noise_disturbance.hpp"
#include "etoff/ricochet.hpp"
#include "etoff/sampling.hpp"

namespace etoff::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<double> doubles_of(const Json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return {j.get<double>()};
}

std::vector<std::string> strings_of(const Json& j) {
  if (j.is_array()) return j.get<std::vector<std::string>>();
  return {j.get<std::string>()};
}

std::string format_or(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json, got " + f);
  return f;
}

SearchConfig search_of(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.restarts < 0) throw UsageError("--restarts must be nonnegative");
  if (cfg.max_iterations < 0) throw UsageError("iterations must be nonnegative");
  SearchConfig s;
  s.restarts = cfg.restarts;
  s.max_iterations = cfg.max_iterations;
  s.seed = seed;
  return s;
}

// Writes to --out when given, else to `fallback`.
void emit(const RunConfig& cfg, std::ostream& fallback, const std::string& text) {
  if (cfg.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

std::string fmt(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

RunConfig merge_config(RunConfig base, const Json& j) {
  try {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    if (j.contains("dim")) base.dim = j["dim"].get<Index>();
    if (j.contains("samples")) base.samples = j["samples"].get<int>();
    if (j.contains("relation")) base.relations = strings_of(j["relation"]);
    if (j.contains("alpha")) base.alphas = doubles_of(j["alpha"]);
    if (j.contains("beta")) base.betas = doubles_of(j["beta"]);
    if (j.contains("c")) base.c_grid = doubles_of(j["c"]);
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("restarts")) base.restarts = j["restarts"].get<int>();
    if (j.contains("iterations")) base.max_iterations = j["iterations"].get<int>();
    if (j.contains("instance")) base.instance = j["instance"].get<std::string>();
    if (j.contains("out")) base.out = j["out"].get<std::string>();
    if (j.contains("summary")) base.summary = j["summary"].get<std::string>();
    if (j.contains("format")) base.format = j["format"].get<std::string>();
    if (j.contains("jobs")) base.jobs = j["jobs"].get<int>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return base;
}

std::optional<std::uint64_t> resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return cfg.seed;
  if (const char* env = std::getenv("ETOFF_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string("ETOFF_SEED is not an integer: ") + env);
    return static_cast<std::uint64_t>(v);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- certify

int run_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.instance.empty()) throw UsageError("certify needs an instance file");
    if (cfg.relations.size() != 1 || cfg.alphas.size() != 1 || cfg.betas.size() != 1) {
      throw UsageError("certify takes exactly one relation, alpha and beta");
    }
    const std::string format = format_or(cfg, "json");
    const std::uint64_t seed = resolve_seed(cfg).value_or(0);
    const TradeoffInstance inst = instance_from_json(read_json_file(cfg.instance));
    const Relation relation = relation_from_string(cfg.relations.front());
    const TradeoffCertificate cert = certify(inst.x, inst.z, inst.m, cfg.alphas.front(),
                                             cfg.betas.front(), relation, search_of(cfg, seed));
    if (format == "json") {
      emit(cfg, out, to_json(cert).dump(2) + "\n");
    } else {
      emit(cfg, out, csv_header() + "\n" + csv_row(cert) + "\n");
    }
    if (!cert.passed) {
      err << "certificate failed: margin " << fmt(cert.margin, 17) << "\n";
      return kExitFail;
    }
    return kExitPass;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

// ---------------------------------------------------------------- sweep

SweepPlan plan_sweep(Index dim, const std::vector<Relation>& relations,
                     const std::vector<double>& alphas, const std::vector<double>& betas) {
  SweepPlan plan;
  for (Relation r : relations) {
    const std::string name(to_string(r));
    std::vector<std::pair<double, double>> candidates;
    if (r == Relation::Prop1 || r == Relation::Prop2) {
      for (double a : alphas)
        for (double b : betas) candidates.emplace_back(a, b);
    } else {
      for (double a : alphas) {
        if (a > 0.5) {
          candidates.emplace_back(a, a / (2.0 * a - 1.0));
        } else {
          plan.rejected.push_back({name, a, std::numeric_limits<double>::quiet_NaN(),
                                   "alpha <= 1/2 has no conjugate partner"});
        }
      }
      for (double b : betas) {
        if (b > 0.5) {
          candidates.emplace_back(b / (2.0 * b - 1.0), b);
        } else {
          plan.rejected.push_back({name, std::numeric_limits<double>::quiet_NaN(), b,
                                   "beta <= 1/2 has no conjugate partner"});
        }
      }
    }
    std::vector<std::pair<double, double>> seen;
    for (const auto& [a, b] : candidates) {
      const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto& p) {
        return same(p.first, a) && same(p.second, b);
      });
      if (dup) continue;
      seen.emplace_back(a, b);
      try {
        check_admissible(r, a, b, dim);
        plan.pairs.push_back({r, a, b});
      } catch (const AdmissibilityError& e) {
        plan.rejected.push_back({name, a, b, e.what()});
      }
    }
  }
  return plan;
}

TradeoffInstance sweep_instance(Index dim, std::uint64_t sample_seed, int index) {
  std::vector<int> plain(static_cast<std::size_t>(dim), 1);
  std::vector<int> z_profile = plain;
  if (dim >= 3 && index % 5 == 2) z_profile = {static_cast<int>(dim) - 1, 1};

  ProjectiveObservable x = sample_random_observable(dim, plain, derive_seed(sample_seed, 0));
  ProjectiveObservable z = sample_random_observable(dim, z_profile, derive_seed(sample_seed, 1));

  // Every fourth sample measures one of the observables projectively, the
  // regime where the relations come closest to equality.
  if (index % 8 == 0) return {x, z, luders_instrument(z)};
  if (index % 8 == 4) return {x, z, luders_instrument(x)};

  std::mt19937_64 rng(derive_seed(sample_seed, 3));
  std::uniform_int_distribution<std::size_t> outcomes(1, static_cast<std::size_t>(dim) + 1);
  std::uniform_int_distribution<std::size_t> kraus(1, 2);
  const std::size_t n = outcomes(rng);
  const std::size_t k = kraus(rng);
  return {x, z, sample_random_instrument(dim, n, k, derive_seed(sample_seed, 2))};
}

SweepResult run_sweep_samples(Index dim, int samples, std::uint64_t seed, const SweepPlan& plan,
                              const SearchConfig& search, int jobs) {
  std::vector<std::vector<TradeoffCertificate>> per_sample(static_cast<std::size_t>(samples));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < samples; i = next++) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
      TradeoffInstance inst = sweep_instance(dim, s, i);
      SearchConfig sc = search;
      sc.seed = s;
      TradeoffEvaluator ev(std::move(inst.x), std::move(inst.z), std::move(inst.m), sc);
      auto& rows = per_sample[static_cast<std::size_t>(i)];
      for (const SweepPair& p : plan.pairs) rows.push_back(ev.certify(p.relation, p.alpha, p.beta));
    }
  };
  const int workers = std::max(1, std::min(jobs, samples));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SweepResult res;
  res.samples = samples;
  res.rejected = plan.rejected;
  res.min_margin = std::numeric_limits<double>::infinity();
  for (auto& rows : per_sample)
    for (auto& c : rows) {
      res.min_margin = std::min(res.min_margin, c.margin);
      if (!c.passed) ++res.failures;
      res.certificates.push_back(std::move(c));
    }
  return res;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepResult res;
  std::string format;
  try {
    format = format_or(cfg, "csv");
    if (cfg.dim < 2) throw UsageError("--dim must be at least 2");
    if (cfg.samples < 1) throw UsageError("--samples must be positive");
    if (cfg.relations.empty() || cfg.alphas.empty() || cfg.betas.empty()) {
      throw UsageError("relation, alpha and beta grids must be non-empty");
    }
    const auto seed = resolve_seed(cfg);
    if (!seed) throw UsageError("sweep needs --seed or ETOFF_SEED");
    std::vector<Relation> relations;
    for (const auto& r : cfg.relations) relations.push_back(relation_from_string(r));
    const SweepPlan plan = plan_sweep(cfg.dim, relations, cfg.alphas, cfg.betas);
    if (plan.pairs.empty()) throw UsageError("no admissible (relation, alpha, beta) pair in the grids");
    int jobs = cfg.jobs;
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    res = run_sweep_samples(cfg.dim, cfg.samples, *seed, plan, search_of(cfg, *seed), jobs);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  std::ostringstream body;
  if (format == "csv") {
    body << csv_header() << "\n";
    for (const auto& c : res.certificates) body << csv_row(c) << "\n";
  } else {
    Json arr = Json::array();
    for (const auto& c : res.certificates) arr.push_back(to_json(c));
    body << arr.dump(2) << "\n";
  }

  Json summary{{"samples", res.samples},
               {"certificates", res.certificates.size()},
               {"failures", res.failures},
               {"min_margin", res.min_margin}};
  Json rejected = Json::array();
  for (const auto& r : res.rejected) {
    rejected.push_back({{"relation", r.relation},
                        {"alpha", std::isnan(r.alpha) ? Json(nullptr) : Json(r.alpha)},
                        {"beta", std::isnan(r.beta) ? Json(nullptr) : Json(r.beta)},
                        {"reason", r.reason}});
  }
  summary["rejected"] = rejected;

  try {
    emit(cfg, out, body.str());
    if (cfg.summary.empty()) {
      err << summary.dump(2) << "\n";
    } else {
      std::ofstream f(cfg.summary);
      if (!f) throw UsageError("cannot write " + cfg.summary);
      f << summary.dump(2) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return res.failures == 0 ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- bounds

int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.c_grid.empty() || cfg.alphas.empty() || cfg.betas.empty()) {
      throw UsageError("bounds needs non-empty --c, --alpha and --beta grids");
    }
    const std::string format = format_or(cfg, "csv");
    for (double c : cfg.c_grid)
      if (!(c > 0.0 && c <= 1.0)) throw UsageError("every c must lie in (0, 1], got " + fmt(c, 9));
    for (double a : cfg.alphas)
      if (!(a >= 0.0) || !std::isfinite(a)) throw UsageError("alpha grid must be finite and nonnegative");
    for (double b : cfg.betas)
      if (!(b >= 0.0) || !std::isfinite(b)) throw UsageError("beta grid must be finite and nonnegative");

    std::ostringstream csv;
    Json rows = Json::array();
    csv << "c,alpha,beta,B_T,B_R,MU_T,MU_R,theta_T,theta_R\n";
    for (double c : cfg.c_grid)
      for (double a : cfg.alphas)
        for (double b : cfg.betas) {
          const BoundValue bt = bbar_bound(c, a, b, EntropyFamily::tsallis);
          const BoundValue br = bbar_bound(c, a, b, EntropyFamily::renyi);
          std::optional<MuBounds> mu;
          if (conjugate_pair(a, b)) mu = mu_bounds(c, a, b);
          csv << fmt(c, 9) << ',' << fmt(a, 9) << ',' << fmt(b, 9) << ',' << fmt(bt.value, 9) << ','
              << fmt(br.value, 9) << ',' << (mu ? fmt(mu->tsallis.value, 9) : "") << ','
              << (mu ? fmt(mu->renyi.value, 9) : "") << ',' << fmt(*bt.argmin_theta, 9) << ','
              << fmt(*br.argmin_theta, 9) << "\n";
          rows.push_back({{"c", c},
                          {"alpha", a},
                          {"beta", b},
                          {"B_T", bt.value},
                          {"B_R", br.value},
                          {"MU_T", mu ? Json(mu->tsallis.value) : Json(nullptr)},
                          {"MU_R", mu ? Json(mu->renyi.value) : Json(nullptr)},
                          {"theta_T", *bt.argmin_theta},
                          {"theta_R", *br.argmin_theta}});
        }
    emit(cfg, out, format == "csv" ? csv.str() : rows.dump(2) + "\n");
    return kExitPass;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

// ---------------------------------------------------------------- selftest

namespace {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::numbers::sqrt2;
}

Check saturation_check() {
  const ProjectiveObservable z = ProjectiveObservable::from_basis(identity(2));
  const ProjectiveObservable x = ProjectiveObservable::from_basis(hadamard());
  const QuantumInstrument m = luders_instrument(z);
  const TradeoffCertificate cert = certify(x, z, m, 1.0, 1.0, Relation::Prop3);
  const double ln2 = std::log(2.0);
  const double worst = std::max({std::abs(cert.noise - ln2), std::abs(cert.disturbance),
                                 std::abs(cert.c - 1.0 / std::numbers::sqrt2),
                                 std::abs(cert.bound.value - ln2)});
  std::ostringstream os;
  os << "margin " << fmt(cert.margin, 3) << ", max deviation " << fmt(worst, 3);
  return {"saturation", worst < 1e-9 && std::abs(cert.margin) < 1e-7, os.str()};
}

Check ricochet_check() {
  double worst = 0.0;
  bool ok = true;
  int instances = 0;
  for (Index d : {2, 3})
    for (std::uint64_t i = 0; i < 4; ++i) {
      const std::uint64_t s = derive_seed(0x51c0ull + static_cast<std::uint64_t>(d), i);
      const std::vector<int> plain(static_cast<std::size_t>(d), 1);
      const auto x = sample_random_observable(d, plain, derive_seed(s, 0));
      const auto z = sample_random_observable(d, plain, derive_seed(s, 1));
      const std::size_t n = 1 + i % static_cast<std::size_t>(d + 1);
      const auto m = sample_random_instrument(d, n, 2, derive_seed(s, 2));
      const Channel psi = sample_random_channel(d * static_cast<Index>(n), d, 2 * n, derive_seed(s, 3));
      for (Estimator e : {Estimator::final_outcome, Estimator::standard_decision}) {
        const ConsistencyReport r = ricochet_oracle(x, z, m, psi, e);
        worst = std::max(worst, r.max_discrepancy());
        ok = ok && r.passed(1e-9);
        ++instances;
      }
    }
  std::ostringstream os;
  os << instances << " reports, max discrepancy " << fmt(worst, 3);
  return {"ricochet", ok, os.str()};
}

Eigen::MatrixXd random_joint(std::size_t nx, std::size_t ny, std::uint64_t seed) {
  const auto p = sample_probabilities(nx * ny, seed);
  Eigen::MatrixXd t(static_cast<Index>(nx), static_cast<Index>(ny));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) t(static_cast<Index>(i), static_cast<Index>(j)) = p[i * ny + j];
  return t;
}

Check sandwich_check() {
  const double orders[] = {0.3, 0.5, 1.0, 1.5, 2.0, 3.0};
  double worst = 0.0;
  int evaluated = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t nx = 2 + s % 3;
    const std::size_t ny = 1 + (s / 3) % 4;
    const JointDistribution j(random_joint(nx, ny, derive_seed(0x5a4d, s)));
    const ErrorReport std_rule = standard_decision(j);
    for (double a : orders)
      for (EntropyFamily f : {EntropyFamily::renyi, EntropyFamily::tsallis}) {
        const double h = conditional_entropy(j, EntropyOrder(a, f));
        for (const auto& lb : lower_bounds(j, a, f)) worst = std::max(worst, lb.value - h);
        for (const auto& ub : fano_upper_bounds(j, a, f, std_rule.rule)) worst = std::max(worst, h - ub.value);
        ++evaluated;
      }
  }
  std::ostringstream os;
  os << evaluated << " sandwiches, worst violation " << fmt(worst, 3);
  return {"sandwich", worst <= 1e-9, os.str()};
}

Check limit_check() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const JointDistribution j(random_joint(3, 3, derive_seed(0x11f1, s)));
    const double h1 = cond_shannon(j);
    for (double a : {1.0 - 1e-8, 1.0 + 1e-8, 1.0})
      for (EntropyFamily f : {EntropyFamily::renyi, EntropyFamily::tsallis})
        worst = std::max(worst, std::abs(conditional_entropy(j, EntropyOrder(a, f)) - h1));
  }
  std::ostringstream os;
  os << "max deviation from Shannon " << fmt(worst, 3);
  return {"shannon_limit", worst <= 1e-5, os.str()};
}

Check fixture_check(const std::string& path) {
  try {
    const TradeoffInstance inst = instance_from_json(read_json_file(path));
    const TradeoffCertificate cert = certify(inst.x, inst.z, inst.m, 1.0, 1.0, Relation::Prop3);
    return {"fixture", cert.passed, path + ": margin " + fmt(cert.margin, 3)};
  } catch (const Error& e) {
    return {"fixture", false, path + ": " + e.what()};
  }
}

}  // namespace

int run_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Check> checks;
  auto guarded = [&](const char* name, Check (*fn)()) {
    try {
      checks.push_back(fn());
    } catch (const Error& e) {
      checks.push_back({name, false, e.what()});
    }
  };
  guarded("saturation", saturation_check);
  guarded("ricochet", ricochet_check);
  guarded("sandwich", sandwich_check);
  guarded("shannon_limit", limit_check);
  if (!cfg.instance.empty()) checks.push_back(fixture_check(cfg.instance));

  Json report{{"checks", Json::array()}};
  bool all = true;
  for (const auto& c : checks) {
    report["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  report["passed"] = all;
  try {
    emit(cfg, out, report.dump(2) + "\n");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  for (const auto& c : checks)
    if (!c.passed) {
      err << "selftest failed: " << c.name << ": " << c.detail << "\n";
      return kExitFail;
    }
  return kExitPass;
}

}  // namespace etoff::cli
