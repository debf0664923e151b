#include "spectra/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "construction_detail.hpp"
#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"
#include "spectra/errors.hpp"
#include "spectra/kernels.hpp"
#include "spectra/numtheory.hpp"

namespace spectra {

std::string to_string(Regime r) { return r == Regime::literal ? "paper-regime" : "relaxed"; }

namespace detail {

void add_check(ConstructionReport& rep, std::string name, double measured, double bound,
               std::string relation, bool asserted) {
  bool pass = false;
  if (relation == "<=") pass = measured <= bound;
  else if (relation == ">=") pass = measured >= bound;
  else pass = measured == bound;
  rep.checks.push_back({std::move(name), measured, bound, std::move(relation), pass, asserted});
}

bool subset_of(const GroupSubset& a, const GroupSubset& b) {
  return std::includes(b.elements().begin(), b.elements().end(), a.elements().begin(),
                       a.elements().end());
}

LargeSpectrum record_spectrum(ConstructionReport& rep, const SpectrumTable& spectrum,
                              std::uint64_t seed) {
  LargeSpectrum ls = large_spectrum(rep.set, spectrum, rep.alpha);
  rep.spectrum = ls.members;
  rep.boundary_marginals = ls.boundary_marginals;

  const GroupDescriptor& g = rep.set.group();
  std::vector<Element> sample;
  for (Element r : ls.members.elements()) {
    if (sample.size() >= 32) break;
    sample.push_back(r);
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<Element> pick(0, g.order() - 1);
  while (sample.size() < 64 && sample.size() < g.order()) sample.push_back(pick(rng));

  const double order = static_cast<double>(g.order());
  const double tol = 1e-6 * std::max(1.0, static_cast<double>(rep.set.size()));
  double worst = 0;
  bool agree = true;
  for (Element r : sample) {
    const double direct = std::abs(coefficient_direct(rep.set, r));
    worst = std::max(worst, std::fabs(direct - spectrum.magnitude(r)));
    if (std::fabs(direct - rep.alpha * order) <= ls.eta * order) continue;
    const bool member = direct >= (rep.alpha - ls.eta) * order;
    agree = agree && (member == ls.members.contains(r));
  }
  rep.cross_checked = static_cast<int>(sample.size());
  rep.cross_check_error = worst;
  rep.cross_check_pass = agree && worst <= tol;
  return ls;
}

void settle_verdict(ConstructionReport& rep) {
  bool ok = rep.cross_check_pass;
  if (rep.target) ok = ok && rep.spectrum == *rep.target;
  for (const auto& c : rep.checks)
    if (c.asserted) ok = ok && c.pass;
  rep.verdict = ok;
}

}  // namespace detail

namespace {

void require_cyclic(const GroupDescriptor& g, const char* what) {
  if (!g.is_cyclic()) throw GroupMismatch(std::string(what) + " works over Z_N");
}

double max_deviation(const SpectrumTable& c, const SpectrumTable& f) {
  double worst = 0;
  for (Element r = 1; r < c.size(); ++r) worst = std::max(worst, std::abs(c[r] - f[r]));
  return worst;
}

QuantizerResult quantize_with(const DensityFunction& f, const SpectrumTable& fhat,
                              const QuantizerConfig& cfg) {
  if (!(cfg.tau > 0)) throw PreconditionError("tau must be positive");
  if (cfg.max_retries < 1) throw PreconditionError("max_retries must be >= 1");
  if (!f.within_unit_interval(1e-12)) throw PreconditionError("quantizer needs 0 <= f <= 1");
  const GroupDescriptor& g = f.group();
  const std::size_t n = g.order();
  const auto target = static_cast<std::size_t>(std::floor(f.sum() + 1e-6));
  const double threshold = cfg.tau * std::sqrt(static_cast<double>(n));

  QuantizerResult best{GroupSubset(g), INFINITY, threshold, false, 0};
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<char> in(n, 0);
    std::vector<Element> members, outside;
    for (Element x = 0; x < n; ++x) {
      in[x] = coin(rng) < f[x];
      (in[x] ? members : outside).push_back(x);
    }
    if (members.size() > target) {
      const std::size_t excess = members.size() - target;
      std::partial_sort(members.begin(), members.begin() + excess, members.end(),
                        [&](Element a, Element b) { return f[a] != f[b] ? f[a] < f[b] : a < b; });
      for (std::size_t i = 0; i < excess; ++i) in[members[i]] = 0;
    } else if (members.size() < target) {
      const std::size_t missing = target - members.size();
      std::partial_sort(outside.begin(), outside.begin() + missing, outside.end(),
                        [&](Element a, Element b) { return f[a] != f[b] ? f[a] > f[b] : a < b; });
      for (std::size_t i = 0; i < missing; ++i) in[outside[i]] = 1;
    }
    std::vector<Element> chosen;
    chosen.reserve(target);
    for (Element x = 0; x < n; ++x)
      if (in[x]) chosen.push_back(x);
    GroupSubset c(g, std::move(chosen));
    const double dev = max_deviation(transform(c), fhat);
    if (dev < best.deviation) {
      best.set = std::move(c);
      best.deviation = dev;
    }
    best.attempts = attempt + 1;
    if (dev <= threshold) {
      best.accepted = true;
      break;
    }
  }
  return best;
}

FunctionDiagnostics diagnose(const DensityFunction& f, const SpectrumTable& fhat,
                             const GroupSubset& keys) {
  FunctionDiagnostics d{f.sum(), f.min(), f.max(), {}};
  for (Element r : keys.elements()) {
    if (d.key_coefficients.size() >= 16) break;
    d.key_coefficients.emplace_back(r, fhat.magnitude(r));
  }
  return d;
}

double max_off_target(const SpectrumTable& fhat, const GroupSubset& target) {
  double worst = 0;
  for (Element r = 0; r < fhat.size(); ++r)
    if (!target.contains(r)) worst = std::max(worst, fhat.magnitude(r));
  return worst;
}

// Quantizes f repeatedly (fresh seeds per trial) until R_alpha of the
// quantized set equals the target.
ConstructionReport quantized_construction(std::string name, const DensityFunction& f,
                                          const GroupSubset& target, double delta, double alpha,
                                          const QuantizerConfig& qcfg, int trials, Regime regime) {
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  const GroupDescriptor& g = f.group();
  const SpectrumTable fhat = transform(f);
  ConstructionReport rep(g);
  rep.construction = std::move(name);
  rep.target = target;
  rep.delta = delta;
  rep.alpha = alpha;
  rep.regime = regime;
  rep.diagnostics = diagnose(f, fhat, target);
  rep.parameters["max_off_target_coefficient"] = max_off_target(fhat, target);
  rep.parameters["tau"] = qcfg.tau;

  for (int trial = 0; trial < trials; ++trial) {
    QuantizerConfig q = qcfg;
    q.seed = qcfg.seed + static_cast<std::uint64_t>(trial) * 0x100000001b3ULL;
    QuantizerResult qr = quantize_with(f, fhat, q);
    rep.set = std::move(qr.set);
    rep.deviation = qr.deviation;
    rep.deviation_threshold = qr.threshold;
    rep.retries = trial + 1;
    rep.parameters["quantizer_attempts"] = qr.attempts;
    rep.parameters["quantizer_accepted"] = qr.accepted ? 1.0 : 0.0;
    const LargeSpectrum ls = large_spectrum(rep.set, transform(rep.set), alpha);
    if (ls.members == target) break;
  }
  detail::record_spectrum(rep, transform(rep.set), qcfg.seed);
  detail::settle_verdict(rep);
  return rep;
}

GroupSubset with_negatives_and_zero(const GroupSubset& lambda) {
  const GroupDescriptor& g = lambda.group();
  std::vector<Element> out{0};
  for (Element x : lambda.elements()) {
    out.push_back(x);
    out.push_back(g.neg(x));
  }
  return GroupSubset(g, std::move(out));
}

// cos(2 pi j / N) for every j, from exactly reduced angles.
std::vector<double> cosine_table(std::uint64_t modulus) {
  const auto roots = kernels::unit_roots(modulus);
  std::vector<double> c(modulus);
  for (std::uint64_t j = 0; j < modulus; ++j) c[j] = roots[j].real();
  return c;
}

}  // namespace

QuantizerResult quantize_to_set(const DensityFunction& f, const QuantizerConfig& cfg) {
  return quantize_with(f, transform(f), cfg);
}

DensityFunction build_prescribed_function(const GroupSubset& s, double delta, double alpha) {
  const GroupDescriptor& g = s.group();
  require_cyclic(g, "build_prescribed_function");
  if (!s.contains(0)) throw PreconditionError("S must contain 0");
  if (!s.is_symmetric()) throw PreconditionError("S must be symmetric");
  if (!(alpha > 0 && delta > 0 && delta <= 0.5)) throw PreconditionError("need alpha > 0, 0 < delta <= 1/2");
  const double nonzero = static_cast<double>(s.size() - 1);
  if (2.0 * alpha * nonzero > delta * (1 + 1e-12))
    throw PreconditionError("|S \\ {0}| exceeds delta / (2 alpha)");
  const std::uint64_t n = g.modulus();
  const auto cosines = cosine_table(n);
  std::vector<double> f(n, delta);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 4096)
  for (std::ptrdiff_t xi = 0; xi < count; ++xi) {
    const auto x = static_cast<std::uint64_t>(xi);
    long double acc = 0;
    for (Element r : s.elements()) {
      if (r == 0) continue;
      acc += cosines[mulmod(r, x, n)];
    }
    f[x] = static_cast<double>(delta + 2.0L * alpha * acc);
  }
  return DensityFunction(g, std::move(f));
}

ConstructionReport construct_prescribed_small(const GroupSubset& s, double delta, double alpha,
                                              const QuantizerConfig& qcfg, int trials) {
  const GroupDescriptor& g = s.group();
  require_cyclic(g, "construct_prescribed_small");
  if (!(alpha <= delta / 2)) throw PreconditionError("need alpha <= delta / 2");
  const double root_n = std::sqrt(static_cast<double>(g.modulus()));
  if (!(alpha > 2.0 * qcfg.tau / root_n)) throw PreconditionError("need alpha > 2 tau / sqrt(N)");
  const DensityFunction f = build_prescribed_function(s, delta, alpha);
  const bool literal = alpha > 20.0 / root_n && qcfg.tau <= 20.0 &&
                     static_cast<double>(s.size()) <= delta / (2 * alpha);
  ConstructionReport rep = quantized_construction("prescribed", f, s, delta, alpha, qcfg, trials,
                                                  literal ? Regime::literal : Regime::relaxed);
  if (!literal) rep.notes.push_back("hypotheses not literally satisfied; relaxed run");
  return rep;
}

double riesz_constant() { return 1.5 * std::numbers::ln2; }

DensityFunction riesz_product(const GroupSubset& lambda, const RieszConfig& cfg) {
  const GroupDescriptor& g = lambda.group();
  require_cyclic(g, "riesz_product");
  if (!(cfg.alpha > 0 && cfg.alpha <= cfg.delta && cfg.delta <= 1))
    throw PreconditionError("need 0 < alpha <= delta <= 1");
  if (lambda.contains(0)) throw PreconditionError("0 cannot lie in Lambda");
  const double m = static_cast<double>(lambda.size());
  if (!cfg.relaxed) {
    if (m > cfg.delta / (3 * cfg.alpha) * std::log2(1 / cfg.delta))
      throw PreconditionError("|Lambda| exceeds (delta / 3 alpha) log(1/delta)");
    MembershipOptions opt;
    opt.throw_on_budget = true;
    if (!family_membership(lambda, FamilyParams{2, std::nullopt, 1, 1}, FamilyVariant::k_dissociated,
                           {}, opt)
             .verdict)
      throw PreconditionError("Lambda is not 2-dissociated");
  } else if (!is_dissociated(lambda).verdict) {
    throw PreconditionError("Lambda is not dissociated");
  }
  const double c = riesz_constant();
  const double ratio = 2 * c * cfg.alpha / cfg.delta;
  if (cfg.delta * std::pow(1 + ratio, m) > 1 + 1e-12)
    throw PreconditionError("delta (1 + 2 c alpha / delta)^m exceeds 1");

  const std::uint64_t n = g.modulus();
  const auto cosines = cosine_table(n);
  std::vector<double> f(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 4096)
  for (std::ptrdiff_t xi = 0; xi < count; ++xi) {
    const auto x = static_cast<std::uint64_t>(xi);
    long double acc = cfg.delta;
    for (Element l : lambda.elements()) acc *= 1.0L + ratio * cosines[mulmod(l, x, n)];
    f[x] = static_cast<double>(acc);
  }
  return DensityFunction(g, std::move(f));
}

RieszWindows riesz_windows(const SpectrumTable& spectrum, const GroupSubset& lambda, double alpha) {
  const GroupSubset support = with_negatives_and_zero(lambda);
  const double n = static_cast<double>(spectrum.size());
  RieszWindows w;
  w.lower = (1 + std::pow(2.0, -5)) * alpha * n;
  w.upper = 0.5 * alpha * n;
  w.min_on_lambda = INFINITY;
  for (Element r = 1; r < spectrum.size(); ++r) {
    const double m = spectrum.magnitude(r);
    if (support.contains(r)) {
      w.min_on_lambda = std::min(w.min_on_lambda, m);
    } else {
      w.max_off_lambda = std::max(w.max_off_lambda, m);
    }
  }
  if (lambda.empty()) w.min_on_lambda = 0;
  w.pass = (lambda.empty() || w.min_on_lambda >= w.lower) && w.max_off_lambda <= w.upper;
  return w;
}

ConstructionReport construct_riesz(const GroupSubset& lambda, const RieszConfig& cfg,
                                   const QuantizerConfig& qcfg, int trials) {
  const GroupDescriptor& g = lambda.group();
  require_cyclic(g, "construct_riesz");
  const DensityFunction f = riesz_product(lambda, cfg);
  const double root_n = std::sqrt(static_cast<double>(g.modulus()));

  bool two_dissociated = false;
  {
    MembershipOptions opt;
    opt.budget = 1e7;
    const auto cert = family_membership(lambda, FamilyParams{2, std::nullopt, 1, 1},
                                        FamilyVariant::k_dissociated, {}, opt);
    two_dissociated = cert.verdict && cert.exhaustive;
  }
  const bool literal = !cfg.relaxed && two_dissociated && 640.0 / root_n < cfg.alpha &&
                     cfg.alpha <= std::pow(2.0, -10) * cfg.delta;
  ConstructionReport rep =
      quantized_construction("riesz", f, with_negatives_and_zero(lambda), cfg.delta, cfg.alpha,
                             qcfg, trials, literal ? Regime::literal : Regime::relaxed);
  const RieszWindows w = riesz_windows(transform(f), lambda, cfg.alpha);
  detail::add_check(rep, "riesz window on +-Lambda", w.min_on_lambda, w.lower, ">=", false);
  detail::add_check(rep, "riesz window off +-Lambda", w.max_off_lambda, w.upper, "<=", false);
  detail::add_check(rep, "quantizer noise floor alpha N / (4 tau sqrt N)",
                    cfg.alpha * root_n / (4 * qcfg.tau), 1.0, ">=", false);
  rep.parameters["c"] = riesz_constant();
  rep.parameters["two_dissociated"] = two_dissociated ? 1.0 : 0.0;
  if (!two_dissociated) rep.notes.push_back("Lambda is not 2-dissociated; relaxed run");
  return rep;
}

double riesz_poly(int k, double x) {
  if (k < 1) throw PreconditionError("riesz_poly needs k >= 1");
  long double sum = 0, term = 1;  // term = (-1)^j x^{2j} / (16^j j!)
  const long double x2 = static_cast<long double>(x) * x;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) term *= -x2 / (16.0L * j);
    sum += term;
  }
  return static_cast<double>(2.0L + x * sum);
}

DensityFunction green_plus_function(const GroupDescriptor& group,
                                    const std::vector<std::vector<Element>>& blocks) {
  require_cyclic(group, "green_plus_function");
  if (blocks.empty()) throw PreconditionError("need at least one block");
  std::size_t lo = SIZE_MAX, hi = 0;
  std::vector<Element> all;
  for (const auto& b : blocks) {
    lo = std::min(lo, b.size());
    hi = std::max(hi, b.size());
    for (Element x : b) {
      if (!group.contains(x) || x == 0) throw PreconditionError("block elements must be nonzero residues");
      all.push_back(x);
    }
  }
  if (lo == 0) throw PreconditionError("empty block");
  if (hi > 2 * lo) throw PreconditionError("block sizes differ by more than two times");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw PreconditionError("blocks must be disjoint");

  const std::uint64_t n = group.modulus();
  const auto cosines = cosine_table(n);
  const double scale = std::pow(4.0, -static_cast<double>(blocks.size()));
  std::vector<double> g(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= 4096)
  for (std::ptrdiff_t xi = 0; xi < count; ++xi) {
    const auto x = static_cast<std::uint64_t>(xi);
    double acc = scale;
    for (const auto& b : blocks) {
      double s = 0;
      for (Element l : b) s += cosines[mulmod(l, x, n)];
      const int k = static_cast<int>(b.size());
      acc *= riesz_poly(k, s / std::sqrt(static_cast<double>(k)));
    }
    g[x] = acc;
  }
  return DensityFunction(group, std::move(g));
}

ConstructionReport construct_green_plus(const GroupDescriptor& group,
                                        const std::vector<std::vector<Element>>& blocks,
                                        const GreenConfig& cfg, const QuantizerConfig& qcfg,
                                        int trials) {
  require_cyclic(group, "construct_green_plus");
  if (!(cfg.alpha > 0 && cfg.alpha <= cfg.delta && cfg.delta <= 1))
    throw PreconditionError("need 0 < alpha <= delta <= 1");
  const int p = static_cast<int>(blocks.size());
  const double gamma = cfg.delta * std::pow(2.0, p);
  if (gamma < 0.5 - 1e-12 || gamma > 1 + 1e-12)
    throw PreconditionError("no gamma in [1/2, 1]: need 2^{-p-1} <= delta <= 2^{-p}");
  const DensityFunction f = green_plus_function(group, blocks).scaled(gamma);

  std::vector<Element> flat;
  std::vector<std::pair<Element, int>> tagged;
  for (int b = 0; b < p; ++b)
    for (Element x : blocks[b]) tagged.emplace_back(x, b);
  std::sort(tagged.begin(), tagged.end());
  std::vector<int> partition;
  for (const auto& [x, b] : tagged) {
    flat.push_back(x);
    partition.push_back(b);
  }
  const GroupSubset lambda(group, flat);

  // Randomized attempt to falsify Lambda in Lambda(k, k, p), k = (delta/alpha)^2.
  const int kk = static_cast<int>(std::ceil(std::pow(cfg.delta / cfg.alpha, 2) - 1e-9));
  MembershipOptions opt;
  opt.fallback_samples = cfg.spot_check_samples;
  opt.budget = 1e6;
  const auto cert = family_membership(lambda, FamilyParams{kk, kk, p, 1},
                                      FamilyVariant::partitioned, partition, opt);

  const double root_n = std::sqrt(static_cast<double>(group.modulus()));
  const double log_inv_delta = std::log2(1 / cfg.delta);
  const double m = static_cast<double>(lambda.size());
  const bool literal = cert.verdict && cfg.alpha > 40 / root_n &&
                     p == static_cast<int>(std::floor(log_inv_delta)) &&
                     m <= std::pow(2.0, -12) * std::pow(cfg.delta / cfg.alpha, 2) * log_inv_delta;

  ConstructionReport rep =
      quantized_construction("green", f, with_negatives_and_zero(lambda), cfg.delta, cfg.alpha, qcfg,
                             trials, literal ? Regime::literal : Regime::relaxed);
  rep.gamma = gamma;
  rep.parameters["p"] = p;
  rep.parameters["family_k"] = kk;
  rep.parameters["family_check_exhaustive"] = cert.exhaustive ? 1.0 : 0.0;
  rep.parameters["family_check_verdict"] = cert.verdict ? 1.0 : 0.0;
  if (!cert.exhaustive) rep.notes.push_back("family hypothesis spot-checked by random sampling");
  if (!cert.verdict) rep.notes.push_back("family hypothesis falsified; relaxed run");
  return rep;
}

std::uint64_t bohr_radius(double epsilon, std::uint64_t modulus) {
  if (!(epsilon >= 0)) throw PreconditionError("epsilon must be non-negative");
  const long double v = static_cast<long double>(epsilon) * modulus * (1.0L + 1e-12L);
  return static_cast<std::uint64_t>(std::floor(v));
}

GroupSubset bohr_set(Element lambda, double epsilon, std::uint64_t modulus) {
  if (!is_prime(modulus)) throw PreconditionError("Bohr sets need a prime modulus");
  const GroupDescriptor g = GroupDescriptor::cyclic(modulus);
  lambda %= modulus;
  if (lambda == 0) throw PreconditionError("lambda must be nonzero");
  const std::uint64_t radius = bohr_radius(epsilon, modulus);
  if (2 * radius + 1 >= modulus) return GroupSubset::whole(g);
  const std::uint64_t inv = inverse_mod(lambda, modulus);
  std::vector<Element> out;
  out.reserve(2 * radius + 1);
  out.push_back(0);
  for (std::uint64_t j = 1; j <= radius; ++j) {
    const Element x = mulmod(j, inv, modulus);
    out.push_back(x);
    out.push_back(g.neg(x));
  }
  return GroupSubset(g, std::move(out));
}

BohrSpectralCheck check_bohr_spectrum(Element lambda, double epsilon, std::uint64_t modulus) {
  const GroupSubset b = bohr_set(lambda, epsilon, modulus);
  const GroupDescriptor& g = b.group();
  const SpectrumTable spec = transform(b);
  const std::uint64_t inv = inverse_mod(lambda % modulus, modulus);
  const double n = static_cast<double>(modulus);
  BohrSpectralCheck out;
  for (Element r = 1; r < modulus; ++r) {
    const double dist = std::fabs(static_cast<double>(g.symmetric(mulmod(inv, r, modulus))));
    out.worst_decay_ratio = std::max(out.worst_decay_ratio, spec.magnitude(r) * dist / n);
  }
  const auto p_max = static_cast<std::int64_t>(std::floor(1.0 / (16.0 * epsilon) + 1e-12));
  out.m_bound = 1.5 * epsilon * n;
  out.min_on_m = INFINITY;
  for (std::int64_t p = -p_max; p <= p_max; ++p) {
    const Element r = g.scale(p, lambda % modulus);
    out.min_on_m = std::min(out.min_on_m, spec[r].real());
    ++out.m_size;
  }
  out.pass = out.worst_decay_ratio <= 1.0 + 1e-9 && out.min_on_m >= out.m_bound;
  return out;
}

int BohrUnionConfig::t() const { return static_cast<int>(std::floor(delta / alpha + 1e-12)); }
double BohrUnionConfig::epsilon() const { return delta / t(); }
int BohrUnionConfig::k1() const { return 2 * k; }
int BohrUnionConfig::m() const { return std::max(t(), k1()); }
int BohrUnionConfig::s() const { return static_cast<int>(std::ceil(8.0 * m() / epsilon() - 1e-9)); }

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

ConstructionReport construct_bohr_union(const BohrUnionConfig& cfg) {
  const std::uint64_t n = cfg.modulus;
  if (!is_prime(n)) throw PreconditionError("construct_bohr_union needs a prime N");
  if (!(cfg.alpha > 0 && cfg.alpha <= cfg.delta && cfg.delta <= 1))
    throw PreconditionError("need 0 < alpha <= delta <= 1");
  if (cfg.k < 1) throw PreconditionError("k must be >= 1");
  const int t = cfg.t();
  if (t < 1) throw PreconditionError("delta / alpha must be at least 1");
  const double eps = cfg.epsilon();
  const int k1 = cfg.k1();
  const int k_family = std::min(k1, t);
  const double log_n = std::log2(static_cast<double>(n));
  const double d = cfg.delta, a = cfg.alpha;

  const double cond = 2.0 * cfg.k *
                      std::max(std::log2(64 * d * cfg.k / (a * a)), std::log2(64 * d * d / (a * a * a)));
  const bool regime_params = 32 * d * d <= a && a <= d / 4 && cfg.k >= 2 &&
                            cfg.k <= 0.5 * std::log2(1 / d) && cond <= log_n;
  int s = cfg.s();
  const double family_count = binomial(t, k_family) * std::pow(2.0 * s + 1, k_family);
  const bool family_feasible = static_cast<double>(n) > family_count;
  const bool literal = regime_params && family_feasible;
  if (!literal && !cfg.relaxed)
    throw PreconditionError("parameters outside the proven regime; rerun relaxed");
  if (!family_feasible) {
    // Largest s with C(t,k)(2s+1)^k < N.
    s = 0;
    while (binomial(t, k_family) * std::pow(2.0 * (s + 1) + 1, k_family) < static_cast<double>(n)) ++s;
    if (s < 1) throw PreconditionError("N too small for any family set");
  }

  ConstructionReport rep(GroupDescriptor::cyclic(n));
  rep.construction = "bohr";
  rep.delta = d;
  rep.alpha = a;
  rep.regime = literal ? Regime::literal : Regime::relaxed;
  rep.parameters["t"] = t;
  rep.parameters["epsilon"] = eps;
  rep.parameters["k1"] = k1;
  rep.parameters["family_k"] = k_family;
  rep.parameters["m"] = cfg.m();
  rep.parameters["s"] = s;
  rep.parameters["s_nominal"] = cfg.s();
  rep.parameters["cond_lhs"] = cond;
  rep.parameters["log2_N"] = log_n;
  rep.notes.push_back("t = floor(delta / alpha)");
  if (s < 1.0 / (16 * eps)) rep.notes.push_back("s < 1/(16 eps): M_lambda sets may overlap");

  std::mt19937_64 rng(cfg.seed);
  const GroupSubset lambda = random_family_set(t, k_family, s, n, rng);
  // Shuffle nothing: the sorted order fixes lambda_1..lambda_t.
  const std::uint64_t radius = bohr_radius(eps, n);
  rep.parameters["bohr_radius"] = static_cast<double>(radius);
  const GroupDescriptor g = GroupDescriptor::cyclic(n);

  std::vector<char> in(n, 0);
  std::size_t size = 0;
  const auto add_shifted = [&](Element l, Element shift) {
    const GroupSubset b = bohr_set(l, eps, n);
    for (Element x : b.elements()) {
      const Element y = g.add(x, shift);
      if (!in[y]) {
        in[y] = 1;
        ++size;
      }
    }
  };
  const auto elems = lambda.elements();
  add_shifted(elems[0], 0);
  std::vector<double> shifts{0};
  const double width = static_cast<double>(std::min<std::uint64_t>(2 * radius + 1, n));
  for (std::size_t i = 1; i < elems.size(); ++i) {
    const Element l = elems[i];
    // In y = x l coordinates B_l + s is the interval centred at s l.
    std::vector<std::uint32_t> image(n, 0);
    for (Element x = 0; x < n; ++x)
      if (in[x]) image[mulmod(x, l, n)] = 1;
    std::vector<std::uint64_t> prefix(2 * n + 1, 0);
    for (std::uint64_t y = 0; y < 2 * n; ++y) prefix[y + 1] = prefix[y] + image[y % n];
    std::uint64_t best = UINT64_MAX;
    Element best_shift = 0;
    const std::uint64_t inv = inverse_mod(l, n);
    const std::uint64_t w = static_cast<std::uint64_t>(width);
    for (std::uint64_t c = 0; c < n; ++c) {
      const std::uint64_t start = (c + n - radius % n) % n;
      const std::uint64_t overlap = prefix[start + w] - prefix[start];
      const Element shift = mulmod(c, inv, n);
      if (overlap < best || (overlap == best && shift < best_shift)) {
        best = overlap;
        best_shift = shift;
      }
    }
    const double average = static_cast<double>(size) * width / static_cast<double>(n);
    detail::add_check(rep, "shift overlap <= average (step " + std::to_string(i + 1) + ")",
                      static_cast<double>(best), average, "<=", true);
    add_shifted(l, best_shift);
    shifts.push_back(static_cast<double>(best_shift));
  }
  std::vector<Element> members;
  members.reserve(size);
  for (Element x = 0; x < n; ++x)
    if (in[x]) members.push_back(x);
  rep.set = GroupSubset(g, std::move(members));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    rep.parameters["lambda_" + std::to_string(i + 1)] = static_cast<double>(elems[i]);
    rep.parameters["shift_" + std::to_string(i + 1)] = shifts[i];
  }

  const LargeSpectrum ls = detail::record_spectrum(rep, transform(rep.set), cfg.seed);
  const double nd = static_cast<double>(n);
  detail::add_check(rep, "|A| >= delta N", static_cast<double>(rep.set.size()), d * nd, ">=", true);
  detail::add_check(rep, "|A| <= 3 delta N", static_cast<double>(rep.set.size()), 3 * d * nd, "<=", true);

  const auto p_max = static_cast<std::int64_t>(std::floor(1.0 / (16 * eps) + 1e-12));
  std::size_t missing = 0;
  for (Element l : elems)
    for (std::int64_t p = -p_max; p <= p_max; ++p)
      if (!ls.members.contains(g.scale(p, l))) ++missing;
  detail::add_check(rep, "union of M_lambda inside R_alpha (missing)", static_cast<double>(missing), 0,
                    "<=", literal);
  detail::add_check(rep, "|R_alpha| >= delta / (64 alpha^2)", static_cast<double>(ls.members.size()),
                    d / (64 * a * a), ">=", literal);
  const EnergyReport e = additive_energy(ls.members, cfg.k);
  detail::add_check(rep, "T_k(R_alpha) <= 2^{14k} delta / alpha^{2k}", static_cast<double>(e.t_k),
                    std::pow(2.0, 14.0 * cfg.k) * d / std::pow(a, 2.0 * cfg.k), "<=", literal);
  rep.parameters["t_k"] = static_cast<double>(e.t_k);
  detail::settle_verdict(rep);
  return rep;
}

}  // namespace spectra
