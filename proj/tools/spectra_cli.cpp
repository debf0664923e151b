// Command line front end: spectrum, energy, dissoc, construct, verify, sweep.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spectra/constructions.hpp"
#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"
#include "spectra/harness.hpp"
#include "spectra/report_json.hpp"

using namespace spectra;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  return out;
}

GroupSubset residues(const GroupDescriptor& g, const std::string& text) {
  std::vector<Element> xs;
  for (std::int64_t v : parse_list(text)) xs.push_back(g.scale(v, 1));
  return GroupSubset(g, std::move(xs));
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large spectra, additive energies and dissociated sets"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string in_path, out_path;
  double alpha = 0, eta = kDefaultEta;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "large spectrum of a set file");
  spectrum_cmd->add_option("--in", in_path, "set file")->required();
  spectrum_cmd->add_option("--alpha", alpha, "threshold")->required();
  spectrum_cmd->add_option("--eta", eta, "threshold tolerance");
  std::string csv_path;
  spectrum_cmd->add_option("--out", out_path, "JSON output (default stdout)");
  spectrum_cmd->add_option("--dump", csv_path, "full spectrum as CSV r,re,im,abs");
  spectrum_cmd->callback([&] {
    const GroupSubset a = read_set_file(in_path);
    const SpectrumTable t = transform(a);
    const LargeSpectrum ls = large_spectrum(a, t, alpha, eta);
    emit(to_json(ls), out_path);
    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      out.precision(17);
      out << "r,re,im,abs\n";
      for (Element r = 0; r < t.size(); ++r)
        out << format_element(a.group(), r) << ',' << t[r].real() << ',' << t[r].imag() << ','
            << t.magnitude(r) << '\n';
    }
  });

  int k = 2;
  std::string method = "auto";
  std::string source_path;
  auto* energy_cmd = app.add_subcommand("energy", "additive energy T_k of a set file");
  energy_cmd->add_option("--in", in_path, "set file")->required();
  energy_cmd->add_option("--k", k, "order k")->check(CLI::Range(1, 64));
  energy_cmd->add_option("--method", method, "bruteforce|fourier|both|auto")
      ->check(CLI::IsMember({"bruteforce", "fourier", "both", "auto"}));
  energy_cmd->add_option("--source", source_path, "set A whose large spectrum contains the input");
  energy_cmd->add_option("--alpha", alpha, "threshold for the lower-bound check");
  energy_cmd->add_option("--out", out_path, "JSON output");
  energy_cmd->callback([&] {
    const GroupSubset b = read_set_file(in_path);
    Json j = to_json(b.group());
    j["base_size"] = b.size();
    j["k"] = k;
    std::optional<std::uint64_t> value;
    bool agree = true;
    const auto run = [&](EnergyReport r) {
      j[to_string(r.method)] = to_json(r);
      if (value && *value != r.t_k) agree = false;
      value = r.t_k;
    };
    if (method == "bruteforce" || method == "both") run(energy_bruteforce(b, k));
    if (method == "fourier" || method == "both") run(energy_via_fourier(b, k));
    if (method == "auto") run(additive_energy(b, k));
    j["t_k"] = *value;
    j["methods_agree"] = agree;
    if (!agree) exit_code = kExitFail;
    if (!source_path.empty()) {
      const TmainVerdict v = check_tmain(read_set_file(source_path), alpha, b, k);
      j["alpha"] = alpha;
      j["delta"] = v.delta;
      j["lower_bound"] = v.bound;
      j["verdict"] = v.verdict;
      if (!v.verdict) exit_code = kExitFail;
    }
    emit(j, out_path);
  });

  std::string variant = "plain", partition_text;
  int s = 0, p = 1, d = 1;
  double budget = kEnumerationBudget;
  bool greedy = false;
  auto* dissoc_cmd = app.add_subcommand("dissoc", "dissociativity and family membership");
  dissoc_cmd->add_option("--in", in_path, "set file")->required();
  dissoc_cmd->add_option("--variant", variant,
                         "plain|k_dissociated|Lambda_ks|Lambda_k_inf|tilde|partitioned|rank_d");
  dissoc_cmd->add_option("--k", k, "k");
  dissoc_cmd->add_option("--s", s, "s (0 = infinity)");
  dissoc_cmd->add_option("--p", p, "number of blocks");
  dissoc_cmd->add_option("--d", d, "rank parameter");
  dissoc_cmd->add_option("--partition", partition_text, "block index per element, comma separated");
  dissoc_cmd->add_option("--budget", budget, "enumeration budget");
  dissoc_cmd->add_flag("--greedy", greedy, "greedy maximal dissociated subset instead");
  dissoc_cmd->add_option("--out", out_path, "JSON output");
  dissoc_cmd->callback([&] {
    const GroupSubset set = read_set_file(in_path);
    if (greedy) {
      const DissociatedSubset ds = max_dissociated_subset(set);
      Json j = to_json(set.group());
      j["lambda"] = elements_json(ds.lambda);
      j["size"] = ds.lambda.size();
      j["span_size"] = ds.span_size;
      j["covers"] = ds.covers;
      emit(j, out_path);
      return;
    }
    FamilyParams params{k, s > 0 ? std::optional<int>(s) : std::nullopt, p, d};
    std::vector<int> partition;
    for (std::int64_t v : parse_list(partition_text)) partition.push_back(static_cast<int>(v));
    MembershipOptions opt;
    opt.budget = budget;
    const FamilyVariant v = parse_variant(variant);
    const DissociationCertificate cert = v == FamilyVariant::plain && k == 1
                                             ? is_dissociated(set, budget)
                                             : family_membership(set, params, v, partition, opt);
    Json j = to_json(cert);
    j["witness_verified"] = verify_witness(cert);
    emit(j, out_path);
  });

  std::string kind, lambda_text, set_out;
  std::uint64_t modulus = 0;
  unsigned dimension = 0;
  double delta = 0;
  std::uint64_t seed = 1;
  double tau = 20;
  int retries = 200, trials = 50;
  bool relaxed = false;
  auto* construct_cmd = app.add_subcommand("construct", "build a set with a prescribed large spectrum");
  construct_cmd->add_option("kind", kind, "prescribed|riesz|green|bohr|cube|cube-random")
      ->required()
      ->check(CLI::IsMember({"prescribed", "riesz", "green", "bohr", "cube", "cube-random"}));
  construct_cmd->add_option("--N", modulus, "modulus of Z_N");
  construct_cmd->add_option("--n", dimension, "dimension of Z_2^n");
  construct_cmd->add_option("--delta", delta, "density")->required();
  construct_cmd->add_option("--alpha", alpha, "threshold")->required();
  construct_cmd->add_option("--k", k, "energy order (bohr)");
  construct_cmd->add_option("--p", p, "number of blocks (green)");
  construct_cmd->add_option("--lambda", lambda_text, "frequencies, comma separated (S for prescribed)");
  construct_cmd->add_option("--seed", seed, "seed");
  construct_cmd->add_option("--tau", tau, "quantizer deviation constant");
  construct_cmd->add_option("--retries", retries, "quantizer retries");
  construct_cmd->add_option("--trials", trials, "construction trials");
  construct_cmd->add_flag("--relaxed", relaxed, "desk-scale constants");
  construct_cmd->add_option("--out", out_path, "JSON output");
  construct_cmd->add_option("--set-out", set_out, "write the built set here");
  construct_cmd->callback([&] {
    if (const char* env = std::getenv("SPECTRA_SEED")) seed = std::stoull(env);
    const QuantizerConfig q{tau, retries, seed};
    const auto cyclic = [&] {
      if (modulus == 0) throw PreconditionError("--N is required");
      return GroupDescriptor::cyclic(modulus);
    };
    std::optional<ConstructionReport> rep;
    if (kind == "prescribed") {
      rep = construct_prescribed_small(residues(cyclic(), lambda_text), delta, alpha, q, trials);
    } else if (kind == "riesz") {
      rep = construct_riesz(residues(cyclic(), lambda_text), RieszConfig{delta, alpha, relaxed}, q, trials);
    } else if (kind == "green") {
      const GroupSubset lambda = residues(cyclic(), lambda_text);
      if (p < 1 || static_cast<std::size_t>(p) > lambda.size()) throw PreconditionError("need 1 <= p <= |Lambda|");
      std::vector<std::vector<Element>> blocks(p);
      for (std::size_t i = 0; i < lambda.size(); ++i) blocks[i * p / lambda.size()].push_back(lambda.elements()[i]);
      rep = construct_green_plus(cyclic(), blocks, GreenConfig{delta, alpha}, q, trials);
    } else if (kind == "bohr") {
      BohrUnionConfig c;
      c.delta = delta;
      c.alpha = alpha;
      c.k = k;
      c.modulus = modulus;
      c.seed = seed;
      c.relaxed = relaxed;
      rep = construct_bohr_union(c);
    } else {
      if (dimension == 0) throw PreconditionError("--n is required");
      const CubeConstructionConfig c{delta, alpha, dimension, seed, relaxed};
      rep = kind == "cube" ? construct_cube_union(c) : construct_cube_random(c);
    }
    emit(to_json(*rep), out_path);
    if (!set_out.empty()) write_set_file(set_out, rep->set);
    if (!rep->verdict) exit_code = kExitFail;
  });

  std::string config_path, json_out, csv_out;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite from a config");
  verify_cmd->add_option("--config", config_path, "TOML or JSON config")->required();
  verify_cmd->add_option("--json", json_out, "report path (overrides the config)");
  verify_cmd->add_option("--csv", csv_out, "CSV report path");
  verify_cmd->callback([&] {
    ExperimentConfig cfg = load_config(config_path);
    apply_env_overrides(cfg);
    const ReportBundle bundle = run_verification_suite(cfg);
    const std::string json_path = json_out.empty() ? cfg.output_json : json_out;
    const std::string csv_path2 = csv_out.empty() ? cfg.output_csv : csv_out;
    if (json_path.empty()) std::cout << bundle_to_json(bundle).dump(2) << '\n';
    else emit_report(bundle, ReportFormat::json, json_path);
    if (!csv_path2.empty()) emit_report(bundle, ReportFormat::csv, csv_path2);
    std::cerr << bundle.checks.size() << " checks, " << bundle.violations() << " failing\n";
    if (!bundle.all_paper_checks_pass()) exit_code = kExitFail;
  });

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep_cmd->add_option("--config", config_path, "TOML or JSON config")->required();
  sweep_cmd->add_option("--csv", csv_out, "CSV path (default stdout)");
  sweep_cmd->callback([&] {
    ExperimentConfig cfg = load_config(config_path);
    apply_env_overrides(cfg);
    const auto rows = sweep(cfg);
    const std::string path = csv_out.empty() ? cfg.output_csv : csv_out;
    if (path.empty()) {
      write_sweep_csv(std::cout, rows);
    } else {
      std::ofstream out(path);
      if (!out) throw Error("cannot write " + path);
      write_sweep_csv(out, rows);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
