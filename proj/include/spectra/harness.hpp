#pragma once

// Experiment configs, verification suites, sweeps and report output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectra/group.hpp"
#include "spectra/report_json.hpp"

namespace spectra {

struct ExperimentConfig {
  std::string experiment = "experiment";
  GroupKind kind = GroupKind::cyclic;
  std::uint64_t modulus = 1024;
  unsigned dimension = 10;
  std::vector<double> deltas;
  std::vector<double> alphas;
  std::vector<int> ks{2};
  std::vector<int> ds{1};
  std::vector<int> ss{1};
  std::vector<int> ps{1};
  std::vector<std::uint64_t> seeds{1};
  int instances = 1;  // random sets per grid point and seed
  bool relaxed = false;
  std::vector<std::string> suites{"tmain", "chang", "spectrum_size"};
  std::string output_json;
  std::string output_csv;

  GroupDescriptor group() const;
  // Every (delta, alpha) pair of the grid must satisfy 0 < alpha <= delta <= 1.
  void validate() const;
};

ExperimentConfig config_from_json(const Json& j);
// Flat TOML subset: `key = value` lines, [section] headers, strings, numbers,
// booleans and one-line arrays.
Json parse_toml(std::istream& in);
// Dispatches on the extension (.toml, otherwise JSON).
ExperimentConfig load_config(const std::string& path);
// SPECTRA_SEED, when set, replaces the seed list.
void apply_env_overrides(ExperimentConfig& cfg);

struct CheckRecord {
  std::string suite;
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  // Named formula from evaluate_bound that reproduces `bound`, or empty.
  std::string formula;
  double measured = 0;
  double bound = 0;
  std::string relation = "<=";
  bool verdict = false;
  std::string regime = "paper-regime";
  std::string error;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ReportBundle {
  std::string experiment;
  std::vector<std::uint64_t> seeds;
  std::vector<CheckRecord> checks;

  bool all_paper_checks_pass() const;
  std::size_t violations() const;

  friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

ReportBundle run_verification_suite(const ExperimentConfig& cfg);

struct SweepRow {
  std::uint64_t seed = 0;
  int instance = 0;
  double delta = 0;
  double alpha = 0;
  int k = 2;
  std::size_t set_size = 0;
  std::size_t spectrum_size = 0;
  std::uint64_t t_k = 0;
  double tmain_bound = 0;
  double ratio = 0;  // T_k / bound, infinite for an empty B
  std::size_t dissociated_size = 0;
  double chang_bound = 0;
  std::string error;  // nonempty for a partial row
};

std::vector<SweepRow> sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

Json bundle_to_json(const ReportBundle& bundle);
ReportBundle bundle_from_json(const Json& j);
void write_bundle_csv(std::ostream& out, const ReportBundle& bundle);

enum class ReportFormat { json, csv };
void emit_report(const ReportBundle& bundle, ReportFormat format, const std::string& path);

// Random subset of the group of exactly round(delta |G|) elements.
GroupSubset random_subset(const GroupDescriptor& group, double delta, std::uint64_t seed);

}  // namespace spectra
