#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "etoff_cli/cli.hpp"

using namespace etoff;
using namespace etoff::cli;

namespace {

const std::string kFixtures = ETOFF_FIXTURE_DIR;

RunConfig certify_config(const std::string& file, const std::string& relation, double a, double b) {
  RunConfig c;
  c.instance = kFixtures + "/" + file;
  c.relations = {relation};
  c.alphas = {a};
  c.betas = {b};
  c.restarts = 1;
  c.max_iterations = 200;
  return c;
}

RunConfig small_sweep() {
  RunConfig c;
  c.dim = 2;
  c.samples = 6;
  c.relations = {"Prop1", "Binary"};
  c.alphas = {0.5, 1.0, 2.0};
  c.betas = {0.5, 1.0, 2.0};
  c.seed = 17;
  c.restarts = 1;
  c.max_iterations = 150;
  c.jobs = 1;
  return c;
}

}  // namespace

TEST_CASE("certify the saturation fixture") {
  std::ostringstream out, err;
  CHECK(run_certify(certify_config("qubit_saturation.json", "Prop3", 1.0, 1.0), out, err) == kExitPass);
  const Json j = Json::parse(out.str());
  CHECK(std::abs(j["margin"].get<double>()) <= 1e-7);
  CHECK(j["passed"].get<bool>());
}

TEST_CASE("certify input errors exit with 2") {
  std::ostringstream out, err;
  CHECK(run_certify(certify_config("malformed.json", "Prop3", 1.0, 1.0), out, err) == kExitInput);
  CHECK(run_certify(certify_config("broken_completeness.json", "Prop3", 1.0, 1.0), out, err) == kExitInput);
  std::ostringstream err2;
  CHECK(run_certify(certify_config("qubit_saturation.json", "Prop2", 3.0, 1.0), out, err2) == kExitInput);
  CHECK(err2.str().find("Prop2 needs") != std::string::npos);
  CHECK(run_certify(certify_config("missing.json", "Prop1", 1.0, 1.0), out, err) == kExitInput);
  RunConfig bad_format = certify_config("qubit_saturation.json", "Prop1", 1.0, 1.0);
  bad_format.format = "xml";
  CHECK(run_certify(bad_format, out, err) == kExitInput);
}

TEST_CASE("certify CSV output") {
  std::ostringstream out, err;
  RunConfig c = certify_config("qubit_saturation.json", "Prop1", 0.5, 2.0);
  c.format = "csv";
  CHECK(run_certify(c, out, err) == kExitPass);
  CHECK(out.str().rfind(csv_header() + "\n", 0) == 0);
}

TEST_CASE("sweep is deterministic across runs and worker counts") {
  std::ostringstream a, b, c, err;
  RunConfig cfg = small_sweep();
  CHECK(run_sweep(cfg, a, err) == kExitPass);
  CHECK(run_sweep(cfg, b, err) == kExitPass);
  cfg.jobs = 3;
  CHECK(run_sweep(cfg, c, err) == kExitPass);
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
  CHECK(a.str().rfind(csv_header(), 0) == 0);
}

TEST_CASE("sweep rejects inadmissible pairs and reports them") {
  RunConfig cfg = small_sweep();
  cfg.dim = 3;
  cfg.samples = 2;
  cfg.relations = {"Prop2"};
  cfg.alphas = {0.5, 2.0};
  cfg.betas = {0.5};
  std::ostringstream out, err;
  CHECK(run_sweep(cfg, out, err) == kExitPass);
  const Json summary = Json::parse(err.str());
  CHECK(summary["rejected"].size() == 1);
  CHECK(summary["certificates"].get<int>() == 2);
  std::string line;
  std::istringstream rows(out.str());
  int n = 0;
  while (std::getline(rows, line)) ++n;
  CHECK(n == 3);
}

TEST_CASE("sweep needs a seed and valid grids") {
  RunConfig cfg = small_sweep();
  cfg.seed.reset();
  std::ostringstream out, err;
  ::unsetenv("ETOFF_SEED");
  CHECK(run_sweep(cfg, out, err) == kExitInput);
  ::setenv("ETOFF_SEED", "17", 1);
  std::ostringstream env_out, seeded_out;
  CHECK(run_sweep(cfg, env_out, err) == kExitPass);
  CHECK(run_sweep(small_sweep(), seeded_out, err) == kExitPass);
  CHECK(env_out.str() == seeded_out.str());
  ::setenv("ETOFF_SEED", "abc", 1);
  CHECK(run_sweep(cfg, out, err) == kExitInput);
  ::unsetenv("ETOFF_SEED");

  RunConfig empty = small_sweep();
  empty.alphas.clear();
  CHECK(run_sweep(empty, out, err) == kExitInput);
  RunConfig unknown = small_sweep();
  unknown.relations = {"Prop7"};
  CHECK(run_sweep(unknown, out, err) == kExitInput);
}

TEST_CASE("sweep plan completes conjugate pairs") {
  const SweepPlan p = plan_sweep(2, {Relation::Prop3}, {0.3, 1.0, 2.0}, {1.0, 1.5});
  // alpha grid gives (1, 1), (2, 2/3); beta grid gives (1, 1) again and (0.75, 1.5)
  CHECK(p.pairs.size() == 3);
  CHECK(p.rejected.size() == 1);
  const SweepPlan b = plan_sweep(2, {Relation::Binary}, {3.0}, {1.0});
  CHECK(b.pairs.size() == 1);     // (1, 1)
  CHECK(b.rejected.size() == 1);  // (3, 0.6) exceeds 2
}

TEST_CASE("bounds table") {
  RunConfig cfg;
  cfg.c_grid = {1.0, 0.70710678118654752};
  cfg.alphas = {1.0};
  cfg.betas = {1.0, 2.0};
  std::ostringstream out, err;
  CHECK(run_bounds(cfg, out, err) == kExitPass);
  std::istringstream rows(out.str());
  std::string header, r1, r2, r3;
  std::getline(rows, header);
  std::getline(rows, r1);
  std::getline(rows, r2);
  std::getline(rows, r3);
  CHECK(header == "c,alpha,beta,B_T,B_R,MU_T,MU_R,theta_T,theta_R");
  CHECK(r1 == "1,1,1,0,0,0,0,0,0");
  CHECK(r2.find(",,") != std::string::npos);  // (1, 2) is not conjugate
  CHECK(r3.find("0.693147181,0.693147181,0.693147181,0.693147181") != std::string::npos);

  cfg.c_grid = {1.5};
  CHECK(run_bounds(cfg, out, err) == kExitInput);
  cfg.c_grid = {};
  CHECK(run_bounds(cfg, out, err) == kExitInput);
}

TEST_CASE("selftest passes and flags a broken fixture") {
  RunConfig cfg;
  std::ostringstream a, b, err;
  CHECK(run_selftest(cfg, a, err) == kExitPass);
  CHECK(run_selftest(cfg, b, err) == kExitPass);
  CHECK(a.str() == b.str());

  cfg.instance = kFixtures + "/broken_completeness.json";
  std::ostringstream out, err2;
  CHECK(run_selftest(cfg, out, err2) == kExitFail);
  CHECK(err2.str().find("fixture") != std::string::npos);
}

TEST_CASE("config files merge under flags") {
  const Json j = Json::parse(R"({"dim": 3, "samples": 5, "alpha": [0.5, 1], "beta": 2, "relation": "Prop2", "seed": 9})");
  const RunConfig c = merge_config(RunConfig{}, j);
  CHECK(c.dim == 3);
  CHECK(c.alphas.size() == 2);
  CHECK(c.betas == std::vector<double>{2.0});
  CHECK(c.relations == std::vector<std::string>{"Prop2"});
  CHECK(*c.seed == 9);
  CHECK_THROWS_AS(merge_config(RunConfig{}, Json::parse(R"({"dim": "three"})")), ValidationError);
}
