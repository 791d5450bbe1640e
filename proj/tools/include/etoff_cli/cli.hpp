#pragma once

// Command implementations behind the etoff executable. Each returns the process
// exit code: 0 all checks passed, 1 a certificate or property check failed,
// 2 bad input or usage.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "etoff/certificate.hpp"

namespace etoff::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
  Index dim = 2;
  int samples = 100;
  std::vector<std::string> relations{"Prop1"};
  std::vector<double> alphas{1.0};
  std::vector<double> betas{1.0};
  std::vector<double> c_grid;
  std::optional<std::uint64_t> seed;
  int restarts = 8;
  int max_iterations = 2000;
  std::string instance;  // certify input / selftest extra fixture
  std::string out;       // empty: standard output
  std::string summary;   // sweep summary path; empty: standard error
  std::string format;    // csv | json; empty: command default
  int jobs = 0;          // 0: hardware concurrency
};

/// Overlays the keys present in `j` onto `base`. Keys match the long flag names.
RunConfig merge_config(RunConfig base, const Json& j);
/// Flag, then config, then ETOFF_SEED.
std::optional<std::uint64_t> resolve_seed(const RunConfig& cfg);

int run_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Sweep internals, shared with the acceptance harness.

struct SweepPair {
  Relation relation;
  double alpha;
  double beta;
};

struct RejectedPair {
  std::string relation;
  double alpha;
  double beta;
  std::string reason;
};

struct SweepPlan {
  std::vector<SweepPair> pairs;
  std::vector<RejectedPair> rejected;
};

/// Grid product for Prop1/Prop2; conjugate completions alpha -> alpha/(2 alpha - 1)
/// (and the same from the beta grid) for Prop3/Binary. Inadmissible pairs are rejected.
SweepPlan plan_sweep(Index dim, const std::vector<Relation>& relations,
                     const std::vector<double>& alphas, const std::vector<double>& betas);

/// Observables and instrument of sweep sample `index`.
TradeoffInstance sweep_instance(Index dim, std::uint64_t sample_seed, int index);

struct SweepResult {
  std::vector<TradeoffCertificate> certificates;
  std::vector<RejectedPair> rejected;
  int samples = 0;
  double min_margin = 0.0;
  std::size_t failures = 0;
};

/// Samples are independent; results are merged in sample order so the output
/// does not depend on `jobs`.
SweepResult run_sweep_samples(Index dim, int samples, std::uint64_t seed, const SweepPlan& plan,
                              const SearchConfig& search, int jobs);

}  // namespace etoff::cli
