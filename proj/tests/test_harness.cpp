#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "spectra/bounds.hpp"
#include "spectra/energy.hpp"
#include "spectra/harness.hpp"

using namespace spectra;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spectra_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.experiment = "small";
  cfg.modulus = 1021;
  cfg.deltas = {0.2, 0.35};
  cfg.alphas = {0.05, 0.1};
  cfg.ks = {2, 3};
  cfg.seeds = {7, 8};
  cfg.instances = 2;
  return cfg;
}

}  // namespace

TEST_CASE("json and toml configs agree") {
  const fs::path json = scratch("cfg.json");
  const fs::path toml = scratch("cfg.toml");
  write_file(json, R"({"experiment": "demo", "group": {"kind": "cyclic", "modulus": 997},
    "grid": {"delta": [0.1, 0.2], "alpha": 0.05, "k": [2, 3]}, "seeds": [3, 4], "instances": 2,
    "suites": ["tmain", "chang"], "output": {"json": "out.json"}})");
  write_file(toml, R"(experiment = "demo"  # comment
seeds = [3, 4]
instances = 2
suites = ["tmain", "chang"]

[group]
kind = "cyclic"
modulus = 997

[grid]
delta = [0.1, 0.2]
alpha = 0.05
k = [2, 3]

[output]
json = "out.json"
)");
  const ExperimentConfig a = load_config(json.string());
  const ExperimentConfig b = load_config(toml.string());
  CHECK(a.experiment == "demo");
  CHECK(a.modulus == 997);
  CHECK(a.deltas == std::vector<double>{0.1, 0.2});
  CHECK(a.alphas == std::vector<double>{0.05});
  CHECK(a.ks == std::vector<int>{2, 3});
  CHECK(a.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(a.output_json == "out.json");
  CHECK(bundle_to_json(run_verification_suite(a)) == bundle_to_json(run_verification_suite(b)));
  CHECK(b.suites == a.suites);
  CHECK(b.instances == 2);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"grid": {"delta": 0.1, "alpha": 0.2}})")), PreconditionError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"group": {"kind": "torus"}})")), PreconditionError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"grid": {"delta": 0.1, "alpha": 0.05, "k": 1}})")),
                  PreconditionError);
  std::istringstream bad("key value\n");
  CHECK_THROWS_AS(parse_toml(bad), PreconditionError);
}

TEST_CASE("empty grid gives an empty bundle") {
  ExperimentConfig cfg;
  const ReportBundle b = run_verification_suite(cfg);
  CHECK(b.checks.empty());
  CHECK(b.all_paper_checks_pass());
  const fs::path out = scratch("empty.json");
  emit_report(b, ReportFormat::json, out.string());
  const Json j = Json::parse(read_file(out));
  CHECK(j["checks"].empty());
  CHECK(bundle_from_json(j) == b);
  const fs::path csv = scratch("empty.csv");
  emit_report(b, ReportFormat::csv, csv.string());
  CHECK(read_file(csv) == "suite,name,inputs,formula,measured,bound,relation,verdict,regime,error\n");
}

TEST_CASE("round trip and determinism") {
  const ExperimentConfig cfg = small_config();
  const ReportBundle a = run_verification_suite(cfg);
  CHECK(a.checks.size() == 2u * 2 * 2 * 2 * 2 * 3);
  const ReportBundle b = run_verification_suite(cfg);
  CHECK(bundle_to_json(a).dump(2) == bundle_to_json(b).dump(2));
  const fs::path out = scratch("bundle.json");
  emit_report(a, ReportFormat::json, out.string());
  CHECK(bundle_from_json(Json::parse(read_file(out))) == a);
}

TEST_CASE("every stored bound recomputes from its inputs") {
  const ReportBundle b = run_verification_suite(small_config());
  int recomputed = 0;
  for (const auto& c : b.checks) {
    CHECK(c.error.empty());
    if (c.formula.empty()) continue;
    std::map<std::string, double> inputs(c.inputs.begin(), c.inputs.end());
    const double again = evaluate_bound(c.formula, inputs);
    CHECK(std::abs(again - c.bound) <= 1e-12 * std::max(1.0, std::abs(c.bound)));
    ++recomputed;
  }
  CHECK(recomputed == static_cast<int>(b.checks.size()));
}

TEST_CASE("tmain suite over 200 random sets") {
  ExperimentConfig cfg;
  cfg.modulus = 1024;
  cfg.deltas = {0.25};
  cfg.alphas = {0.02};
  cfg.ks = {2};
  cfg.instances = 200;
  cfg.suites = {"tmain"};
  const ReportBundle b = run_verification_suite(cfg);
  CHECK(b.checks.size() == 200);
  int nonempty = 0;
  for (const auto& c : b.checks) nonempty += c.measured > 0;
  CHECK(nonempty > 100);
  CHECK(b.violations() == 0);
  CHECK(b.all_paper_checks_pass());
}

TEST_CASE("sweep rows") {
  ExperimentConfig one;
  one.modulus = 509;
  one.deltas = {0.3};
  one.alphas = {0.1};
  CHECK(sweep(one).size() == 1);

  ExperimentConfig cfg;
  cfg.modulus = 2003;
  cfg.deltas = {0.3};
  cfg.alphas = {0.02, 0.04, 0.06, 0.08, 0.1, 0.15, 0.2, 0.3};
  cfg.seeds = {1, 2, 3};
  const auto rows = sweep(cfg);
  REQUIRE(rows.size() == 24);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].error.empty());
    CHECK(rows[i].ratio >= 1.0);
    if (i % 8 != 0) CHECK(rows[i].spectrum_size <= rows[i - 1].spectrum_size);
  }
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 25);
}

TEST_CASE("SPECTRA_SEED overrides the seed list") {
  ExperimentConfig cfg = small_config();
  ::setenv("SPECTRA_SEED", "12345", 1);
  apply_env_overrides(cfg);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{12345});
  ::setenv("SPECTRA_SEED", "12x", 1);
  CHECK_THROWS_AS(apply_env_overrides(cfg), PreconditionError);
  ::unsetenv("SPECTRA_SEED");
  cfg.seeds = {1};
  apply_env_overrides(cfg);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1});
}

TEST_CASE("construction suites on the cube") {
  ExperimentConfig cfg;
  cfg.kind = GroupKind::cube;
  cfg.dimension = 20;
  cfg.deltas = {std::ldexp(1.0, -5)};
  cfg.alphas = {std::ldexp(1.0, -6)};
  cfg.suites = {"cube"};
  const ReportBundle b = run_verification_suite(cfg);
  CHECK_FALSE(b.checks.empty());
  CHECK(b.all_paper_checks_pass());
  CHECK(b.checks.back().name == "construction verdict");
  CHECK(b.checks.back().verdict);
}

TEST_CASE("golden report") {
  const fs::path golden = fs::path(SPECTRA_TEST_DATA) / "golden_small.json";
  REQUIRE(fs::exists(golden));
  const ExperimentConfig cfg = load_config((fs::path(SPECTRA_TEST_DATA) / "small.toml").string());
  CHECK(bundle_to_json(run_verification_suite(cfg)).dump(2) + "\n" == read_file(golden));
}
