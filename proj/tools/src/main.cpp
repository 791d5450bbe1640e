#include <iostream>

#include <CLI11.hpp>

#include "etoff_cli/cli.hpp"

namespace {

using etoff::cli::RunConfig;

struct Flags {
  etoff::Index dim = 0;
  int samples = 0;
  std::vector<std::string> relations;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> c_grid;
  std::uint64_t seed = 0;
  int restarts = 0;
  int iterations = 0;
  std::string instance;
  std::string out;
  std::string summary;
  std::string format;
  int jobs = 0;
  std::string config;
};

// Registers the flags shared by every subcommand; only flags given on the
// command line override the config file.
void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--dim", f.dim, "Hilbert-space dimension");
  app->add_option("--samples", f.samples, "number of random instances");
  app->add_option("--relation", f.relations, "Prop1, Prop2, Prop3 or Binary")->delimiter(',');
  app->add_option("--alpha", f.alphas, "noise order(s)")->delimiter(',');
  app->add_option("--beta", f.betas, "disturbance order(s)")->delimiter(',');
  app->add_option("--c", f.c_grid, "overlap grid for bounds")->delimiter(',');
  app->add_option("--seed", f.seed, "random seed (falls back to ETOFF_SEED)");
  app->add_option("--restarts", f.restarts, "correction search restarts");
  app->add_option("--iterations", f.iterations, "simplex iterations per restart");
  app->add_option("--out", f.out, "output file (default: stdout)");
  app->add_option("--summary", f.summary, "sweep summary file (default: stderr)");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--jobs", f.jobs, "worker threads (default: all cores)");
  app->add_option("--config", f.config, "JSON run configuration");
}

RunConfig resolve(const CLI::App* app, const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = etoff::cli::merge_config(cfg, etoff::read_json_file(f.config));
  auto given = [&](const char* name) {
    const CLI::Option* opt = app->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--dim")) cfg.dim = f.dim;
  if (given("--samples")) cfg.samples = f.samples;
  if (given("--relation")) cfg.relations = f.relations;
  if (given("--alpha")) cfg.alphas = f.alphas;
  if (given("--beta")) cfg.betas = f.betas;
  if (given("--c")) cfg.c_grid = f.c_grid;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--restarts")) cfg.restarts = f.restarts;
  if (given("--iterations")) cfg.max_iterations = f.iterations;
  if (given("instance")) cfg.instance = f.instance;
  if (given("--out")) cfg.out = f.out;
  if (given("--summary")) cfg.summary = f.summary;
  if (given("--format")) cfg.format = f.format;
  if (given("--jobs")) cfg.jobs = f.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic noise-disturbance trade-off certificates"};
  app.require_subcommand(1);

  Flags certify_f, sweep_f, bounds_f, selftest_f;
  CLI::App* certify = app.add_subcommand("certify", "certify one instance file");
  add_flags(certify, certify_f);
  certify->add_option("instance", certify_f.instance, "instance JSON (X, Z, M)")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "certify randomly sampled instances");
  add_flags(sweep, sweep_f);

  CLI::App* bounds = app.add_subcommand("bounds", "tabulate the lower bounds over a grid");
  add_flags(bounds, bounds_f);

  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in consistency checks");
  add_flags(selftest, selftest_f);
  selftest->add_option("instance", selftest_f.instance, "extra instance fixture to certify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return etoff::cli::kExitInput;
  }

  try {
    if (*certify) return etoff::cli::run_certify(resolve(certify, certify_f), std::cout, std::cerr);
    if (*sweep) return etoff::cli::run_sweep(resolve(sweep, sweep_f), std::cout, std::cerr);
    if (*bounds) return etoff::cli::run_bounds(resolve(bounds, bounds_f), std::cout, std::cerr);
    if (*selftest) return etoff::cli::run_selftest(resolve(selftest, selftest_f), std::cout, std::cerr);
  } catch (const etoff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return etoff::cli::kExitInput;
  }
  return etoff::cli::kExitInput;
}
