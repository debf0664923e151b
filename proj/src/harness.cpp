#include "spectra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "spectra/bounds.hpp"
#include "spectra/constructions.hpp"
#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"
#include "spectra/errors.hpp"

namespace spectra {

GroupDescriptor ExperimentConfig::group() const {
  return kind == GroupKind::cube ? GroupDescriptor::cube(dimension) : GroupDescriptor::cyclic(modulus);
}

void ExperimentConfig::validate() const {
  if (kind == GroupKind::cube && (dimension < 1 || dimension > 30))
    throw PreconditionError("cube dimension must lie in [1, 30]");
  if (kind == GroupKind::cyclic && modulus < 2) throw PreconditionError("modulus must be >= 2");
  if (instances < 1) throw PreconditionError("instances must be >= 1");
  for (double d : deltas)
    for (double a : alphas)
      if (!(a > 0 && a <= d && d <= 1))
        throw PreconditionError("grid pair violates 0 < alpha <= delta <= 1");
  for (int k : ks)
    if (k < 2) throw PreconditionError("k must be >= 2");
}

namespace {

template <class T>
std::vector<T> list_or_scalar(const Json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw PreconditionError("config must be an object");
  ExperimentConfig cfg;
  try {
    if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
    if (j.contains("group")) {
      const Json& g = j["group"];
      const std::string kind = g.value("kind", std::string("cyclic"));
      if (kind == "cyclic") cfg.kind = GroupKind::cyclic;
      else if (kind == "cube") cfg.kind = GroupKind::cube;
      else throw PreconditionError("group.kind must be cyclic or cube");
      if (g.contains("modulus")) cfg.modulus = g["modulus"].get<std::uint64_t>();
      if (g.contains("dimension")) cfg.dimension = g["dimension"].get<unsigned>();
    }
    if (j.contains("grid")) {
      const Json& g = j["grid"];
      if (g.contains("delta")) cfg.deltas = list_or_scalar<double>(g["delta"]);
      if (g.contains("alpha")) cfg.alphas = list_or_scalar<double>(g["alpha"]);
      if (g.contains("k")) cfg.ks = list_or_scalar<int>(g["k"]);
      if (g.contains("d")) cfg.ds = list_or_scalar<int>(g["d"]);
      if (g.contains("s")) cfg.ss = list_or_scalar<int>(g["s"]);
      if (g.contains("p")) cfg.ps = list_or_scalar<int>(g["p"]);
    }
    if (j.contains("seeds")) cfg.seeds = list_or_scalar<std::uint64_t>(j["seeds"]);
    if (j.contains("seed")) cfg.seeds = list_or_scalar<std::uint64_t>(j["seed"]);
    if (j.contains("instances")) cfg.instances = j["instances"].get<int>();
    if (j.contains("relaxed")) cfg.relaxed = j["relaxed"].get<bool>();
    if (j.contains("suites")) cfg.suites = list_or_scalar<std::string>(j["suites"]);
    if (j.contains("output")) {
      cfg.output_json = j["output"].value("json", std::string());
      cfg.output_csv = j["output"].value("csv", std::string());
    }
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("bad config: ") + e.what());
  }
  if (cfg.seeds.empty()) throw PreconditionError("seed list is empty");
  cfg.validate();
  return cfg;
}

Json parse_toml(std::istream& in) {
  Json root = Json::object();
  Json* table = &root;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw PreconditionError("toml line " + std::to_string(line_no) + ": bad header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      table = &root[name];
      if (table->is_null()) *table = Json::object();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("toml line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    // The supported value forms are JSON literals as well.
    try {
      (*table)[key] = Json::parse(trim(line.substr(eq + 1)));
    } catch (const Json::exception&) {
      throw PreconditionError("toml line " + std::to_string(line_no) + ": unsupported value");
    }
  }
  return root;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  if (lower_ext(path) == "toml") return config_from_json(parse_toml(in));
  try {
    return config_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    throw PreconditionError("bad JSON config: " + std::string(e.what()));
  }
}

void apply_env_overrides(ExperimentConfig& cfg) {
  const char* env = std::getenv("SPECTRA_SEED");
  if (env == nullptr || *env == '\0') return;
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    cfg.seeds = {seed};
  } catch (const std::exception&) {
    throw PreconditionError("SPECTRA_SEED must be an unsigned integer");
  }
}

GroupSubset random_subset(const GroupDescriptor& group, double delta, std::uint64_t seed) {
  if (!(delta >= 0 && delta <= 1)) throw PreconditionError("density must lie in [0, 1]");
  const auto m = static_cast<std::size_t>(std::llround(delta * static_cast<double>(group.order())));
  std::mt19937_64 rng(seed);
  std::vector<Element> out;
  out.reserve(m);
  // Selection sampling: keeps x with probability (needed / remaining).
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Element order = group.order();
  for (Element x = 0; x < order && out.size() < m; ++x)
    if (static_cast<double>(order - x) * u(rng) < static_cast<double>(m - out.size())) out.push_back(x);
  return GroupSubset(group, std::move(out));
}

bool ReportBundle::all_paper_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) {
    return c.regime != "paper-regime" || (c.verdict && c.error.empty());
  });
}

std::size_t ReportBundle::violations() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                [](const CheckRecord& c) { return !c.verdict; }));
}

namespace {

struct GridPoint {
  std::uint64_t seed;
  int instance;
  std::size_t delta_index;
  double delta;
  double alpha;
  int k;
};

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
  std::vector<GridPoint> pts;
  for (std::uint64_t seed : cfg.seeds)
    for (int inst = 0; inst < cfg.instances; ++inst)
      for (std::size_t di = 0; di < cfg.deltas.size(); ++di)
        for (double a : cfg.alphas)
          for (int k : cfg.ks) pts.push_back({seed, inst, di, cfg.deltas[di], a, k});
  return pts;
}

std::uint64_t set_seed(const GridPoint& p) {
  std::seed_seq seq{p.seed, static_cast<std::uint64_t>(p.instance), static_cast<std::uint64_t>(p.delta_index)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

CheckRecord make_record(std::string suite, std::string name, const GridPoint& p) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.inputs = {{"seed", static_cast<double>(p.seed)},
              {"instance", p.instance},
              {"delta_target", p.delta},
              {"alpha", p.alpha},
              {"k", p.k}};
  return r;
}

bool holds(double measured, double bound, const std::string& rel) {
  if (rel == "<=") return measured <= bound;
  if (rel == ">=") return measured >= bound;
  return measured == bound;
}

std::vector<CheckRecord> run_random_point(const ExperimentConfig& cfg, const GridPoint& p) {
  std::vector<CheckRecord> out;
  const GroupDescriptor g = cfg.group();
  const GroupSubset a = random_subset(g, p.delta, set_seed(p));
  const LargeSpectrum ls = large_spectrum(a, p.alpha);
  const double delta = a.density();
  for (const std::string& suite : cfg.suites) {
    CheckRecord r = make_record(suite, suite, p);
    r.inputs.emplace_back("delta", delta);
    r.inputs.emplace_back("m", 0);
    try {
      if (suite == "tmain") {
        const GroupSubset b = ls.nonzero_members();
        r.inputs.back().second = static_cast<double>(b.size());
        r.name = "T_k(R_alpha \\ {0}) >= lower bound";
        r.formula = "tmain";
        r.relation = ">=";
        const TmainVerdict v = check_tmain(ls, b, p.k);
        r.measured = static_cast<double>(v.t_k);
        r.bound = v.bound;
      } else if (suite == "chang") {
        r.name = "greedy dissociated subset of R_alpha <= chang bound";
        r.formula = "chang";
        r.measured = static_cast<double>(max_dissociated_subset(ls.members).lambda.size());
        r.bound = evaluate_bound("chang", {{"delta", delta}, {"alpha", p.alpha}});
      } else if (suite == "spectrum_size") {
        r.name = "|R_alpha| <= delta / alpha^2";
        r.formula = "spectrum_size";
        r.measured = static_cast<double>(ls.members.size());
        r.bound = evaluate_bound("spectrum_size", {{"delta", delta}, {"alpha", p.alpha}});
      } else {
        continue;
      }
      r.verdict = holds(r.measured, r.bound, r.relation);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

void append_construction(std::vector<CheckRecord>& out, const std::string& suite,
                         const ConstructionReport& rep, const GridPoint& p) {
  const std::string regime = to_string(rep.regime);
  for (const auto& c : rep.checks) {
    CheckRecord r = make_record(suite, c.name, p);
    r.measured = c.measured;
    r.bound = c.bound;
    r.relation = c.relation;
    r.verdict = c.pass;
    r.regime = c.asserted ? regime : "informational";
    out.push_back(std::move(r));
  }
  CheckRecord v = make_record(suite, "construction verdict", p);
  v.measured = rep.verdict ? 1 : 0;
  v.bound = 1;
  v.relation = "==";
  v.verdict = rep.verdict;
  v.regime = regime;
  out.push_back(std::move(v));
}

std::vector<CheckRecord> run_construction_point(const ExperimentConfig& cfg, const std::string& suite,
                                                const GridPoint& p) {
  std::vector<CheckRecord> out;
  try {
    if (suite == "cube" || suite == "cube-random") {
      if (cfg.kind != GroupKind::cube) throw GroupMismatch(suite + " runs on the cube");
      CubeConstructionConfig c{p.delta, p.alpha, cfg.dimension, p.seed, cfg.relaxed};
      append_construction(out, suite, suite == "cube" ? construct_cube_union(c) : construct_cube_random(c), p);
    } else if (suite == "bohr") {
      if (cfg.kind != GroupKind::cyclic) throw GroupMismatch("bohr runs on Z_N");
      BohrUnionConfig c;
      c.delta = p.delta;
      c.alpha = p.alpha;
      c.k = p.k;
      c.modulus = cfg.modulus;
      c.seed = p.seed;
      c.relaxed = cfg.relaxed;
      append_construction(out, suite, construct_bohr_union(c), p);
    }
  } catch (const std::exception& e) {
    CheckRecord r = make_record(suite, "construction", p);
    r.error = e.what();
    r.regime = cfg.relaxed ? "relaxed" : "paper-regime";
    out.push_back(std::move(r));
  }
  return out;
}

bool is_construction_suite(const std::string& s) { return s == "cube" || s == "cube-random" || s == "bohr"; }

}  // namespace

ReportBundle run_verification_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  ReportBundle bundle;
  bundle.experiment = cfg.experiment;
  bundle.seeds = cfg.seeds;
  const std::vector<GridPoint> pts = expand_grid(cfg);
  const bool random_suites = std::any_of(cfg.suites.begin(), cfg.suites.end(),
                                         [](const std::string& s) { return !is_construction_suite(s); });

  std::vector<std::vector<CheckRecord>> per_point(pts.size());
  const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    if (!random_suites) continue;
    try {
      per_point[i] = run_random_point(cfg, pts[i]);
    } catch (const std::exception& e) {
      CheckRecord r = make_record("grid", "random instance", pts[i]);
      r.error = e.what();
      per_point[i].push_back(std::move(r));
    }
  }
  for (auto& v : per_point)
    for (auto& r : v) bundle.checks.push_back(std::move(r));

  // Constructions are deterministic in (delta, alpha, k, seed); one run each.
  for (const std::string& suite : cfg.suites) {
    if (!is_construction_suite(suite)) continue;
    for (const GridPoint& p : pts) {
      if (p.instance != 0) continue;
      auto recs = run_construction_point(cfg, suite, p);
      for (auto& r : recs) bundle.checks.push_back(std::move(r));
    }
  }
  return bundle;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<GridPoint> pts = expand_grid(cfg);
  const GroupDescriptor g = cfg.group();
  std::vector<SweepRow> rows(pts.size());
  const auto count = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const GridPoint& p = pts[i];
    SweepRow& row = rows[i];
    row.seed = p.seed;
    row.instance = p.instance;
    row.delta = p.delta;
    row.alpha = p.alpha;
    row.k = p.k;
    try {
      const GroupSubset a = random_subset(g, p.delta, set_seed(p));
      row.set_size = a.size();
      const LargeSpectrum ls = large_spectrum(a, p.alpha);
      row.spectrum_size = ls.members.size();
      row.chang_bound = evaluate_bound("chang", {{"delta", a.density()}, {"alpha", p.alpha}});
      row.dissociated_size = max_dissociated_subset(ls.members).lambda.size();
      const TmainVerdict v = check_tmain(ls, ls.nonzero_members(), p.k);
      row.t_k = v.t_k;
      row.tmain_bound = v.bound;
      row.ratio = v.bound > 0 ? static_cast<double>(v.t_k) / v.bound : INFINITY;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "seed,instance,delta,alpha,k,set_size,spectrum_size,t_k,tmain_bound,ratio,dissociated_size,"
         "chang_bound,partial,error\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << r.instance << ',' << number(r.delta) << ',' << number(r.alpha) << ','
        << r.k << ',' << r.set_size << ',' << r.spectrum_size << ',' << r.t_k << ','
        << number(r.tmain_bound) << ',' << number(r.ratio) << ',' << r.dissociated_size << ','
        << number(r.chang_bound) << ',' << (r.error.empty() ? 0 : 1) << ',' << csv_field(r.error)
        << '\n';
  }
}

Json bundle_to_json(const ReportBundle& b) {
  Json j;
  j["experiment"] = b.experiment;
  j["seeds"] = b.seeds;
  Json checks = Json::array();
  for (const auto& c : b.checks) {
    Json r;
    r["suite"] = c.suite;
    r["name"] = c.name;
    Json inputs = Json::object();
    for (const auto& [k, v] : c.inputs) inputs[k] = v;
    r["inputs"] = inputs;
    r["formula"] = c.formula;
    r["measured"] = c.measured;
    r["bound"] = c.bound;
    r["relation"] = c.relation;
    r["verdict"] = c.verdict;
    r["regime"] = c.regime;
    r["error"] = c.error;
    checks.push_back(std::move(r));
  }
  j["checks"] = checks;
  j["violations"] = b.violations();
  j["all_paper_checks_pass"] = b.all_paper_checks_pass();
  return j;
}

ReportBundle bundle_from_json(const Json& j) {
  ReportBundle b;
  try {
    b.experiment = j.at("experiment").get<std::string>();
    b.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const Json& r : j.at("checks")) {
      CheckRecord c;
      c.suite = r.at("suite").get<std::string>();
      c.name = r.at("name").get<std::string>();
      for (const auto& [k, v] : r.at("inputs").items()) c.inputs.emplace_back(k, v.get<double>());
      c.formula = r.at("formula").get<std::string>();
      c.measured = r.at("measured").get<double>();
      c.bound = r.at("bound").get<double>();
      c.relation = r.at("relation").get<std::string>();
      c.verdict = r.at("verdict").get<bool>();
      c.regime = r.at("regime").get<std::string>();
      c.error = r.at("error").get<std::string>();
      b.checks.push_back(std::move(c));
    }
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("bad report bundle: ") + e.what());
  }
  return b;
}

void write_bundle_csv(std::ostream& out, const ReportBundle& b) {
  out << "suite,name,inputs,formula,measured,bound,relation,verdict,regime,error\n";
  for (const auto& c : b.checks) {
    std::string inputs;
    for (const auto& [k, v] : c.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += k + "=" + number(v);
    }
    out << csv_field(c.suite) << ',' << csv_field(c.name) << ',' << csv_field(inputs) << ','
        << c.formula << ',' << number(c.measured) << ',' << number(c.bound) << ',' << c.relation << ','
        << (c.verdict ? "pass" : "fail") << ',' << c.regime << ',' << csv_field(c.error) << '\n';
  }
}

void emit_report(const ReportBundle& bundle, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  if (format == ReportFormat::json) out << bundle_to_json(bundle).dump(2) << '\n';
  else write_bundle_csv(out, bundle);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace spectra
