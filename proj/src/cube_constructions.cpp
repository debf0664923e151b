#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "construction_detail.hpp"
#include "spectra/constructions.hpp"
#include "spectra/energy.hpp"
#include "spectra/errors.hpp"

namespace spectra {

int CubeConstructionConfig::k_prime() const {
  return static_cast<int>(std::floor(std::log2(1.0 / (2.0 * alpha)) + 1e-12));
}
int CubeConstructionConfig::t() const { return static_cast<int>(std::ceil(delta / alpha - 1e-12)); }
double CubeConstructionConfig::burden() const {
  return 2.0 * delta / alpha * std::log2(1.0 / (2.0 * alpha));
}

namespace {

constexpr unsigned kMaxCubeDimension = 30;

void validate_cube(const CubeConstructionConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxCubeDimension)
    throw PreconditionError("cube dimension must lie in [1, 30]");
  if (!(cfg.alpha > 0 && cfg.alpha <= cfg.delta / 2 && cfg.delta < 1))
    throw PreconditionError("need 0 < alpha <= delta / 2 < 1/2");
}

// Every mask supported inside `support`, i.e. the span of {e_j : j in support}.
void add_span(std::uint64_t support, std::vector<Element>& out) {
  std::uint64_t sub = 0;
  do {
    out.push_back(sub);
    sub = (sub - support) & support;
  } while (sub != 0);
}

GroupSubset span_union(const GroupDescriptor& g, const std::vector<std::uint64_t>& supports) {
  std::vector<Element> out;
  for (std::uint64_t s : supports) add_span(s, out);
  return GroupSubset(g, std::move(out));
}

// Bit index j of x, for the positions listed in `support`, packed in order.
std::uint64_t project(std::uint64_t x, std::uint64_t support) {
  std::uint64_t code = 0;
  int pos = 0;
  while (support) {
    const int j = std::countr_zero(support);
    code |= ((x >> j) & 1ULL) << pos++;
    support &= support - 1;
  }
  return code;
}

std::uint64_t deposit(std::uint64_t code, std::uint64_t support) {
  std::uint64_t x = 0;
  while (support) {
    const int j = std::countr_zero(support);
    x |= (code & 1ULL) << j;
    code >>= 1;
    support &= support - 1;
  }
  return x;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

GroupSubset from_table(const GroupDescriptor& g, const std::vector<char>& in) {
  std::vector<Element> members;
  for (Element x = 0; x < in.size(); ++x)
    if (in[x]) members.push_back(x);
  return GroupSubset(g, std::move(members));
}

}  // namespace

ConstructionReport construct_cube_union(const CubeConstructionConfig& cfg) {
  validate_cube(cfg);
  const int kp = cfg.k_prime();
  const int t = cfg.t();
  const bool literal = cfg.burden() <= cfg.n + 1e-9 && cfg.delta <= std::pow(2.0, -5) + 1e-15;
  if (!literal && !cfg.relaxed)
    throw PreconditionError("(2 delta / alpha) log(1 / (2 alpha)) must be <= n and delta <= 2^-5");
  if (kp < 1) throw PreconditionError("alpha too large: k' = 0");
  if (static_cast<long>(t) * kp > static_cast<long>(cfg.n))
    throw PreconditionError("t k' exceeds n: blocks do not fit");

  const GroupDescriptor g = GroupDescriptor::cube(cfg.n);
  const std::uint64_t order = g.order();
  std::vector<std::uint64_t> blocks;
  for (int i = 0; i < t; ++i) blocks.push_back(((1ULL << kp) - 1) << (i * kp));

  std::vector<char> in(order, 0);
  const auto count = static_cast<std::ptrdiff_t>(order);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t xi = 0; xi < count; ++xi) {
    const auto x = static_cast<std::uint64_t>(xi);
    for (std::uint64_t b : blocks)
      if ((x & b) == 0) {
        in[x] = 1;
        break;
      }
  }

  ConstructionReport rep(g);
  rep.construction = "cube";
  rep.set = from_table(g, in);
  rep.target = span_union(g, blocks);
  rep.delta = cfg.delta;
  rep.alpha = cfg.alpha;
  rep.regime = literal ? Regime::literal : Regime::relaxed;
  rep.parameters["k_prime"] = kp;
  rep.parameters["t"] = t;
  rep.parameters["burden"] = cfg.burden();
  rep.parameters["n"] = cfg.n;

  const LargeSpectrum ls = detail::record_spectrum(rep, transform(rep.set), cfg.seed);
  const double n_total = static_cast<double>(order);
  const double d = cfg.delta, a = cfg.alpha;
  const double size = static_cast<double>(rep.set.size());
  detail::add_check(rep, "|A| >= delta 2^n", size, d * n_total, ">=", true);
  detail::add_check(rep, "|A| <= 8 delta 2^n", size, 8 * d * n_total, "<=", true);
  detail::add_check(rep, "R_alpha inside union of L_i (outside count)",
                    static_cast<double>(ls.members.size()) -
                        static_cast<double>(std::count_if(
                            ls.members.elements().begin(), ls.members.elements().end(),
                            [&](Element r) { return rep.target->contains(r); })),
                    0, "<=", true);
  detail::add_check(rep, "|R_alpha| >= delta / (8 alpha^2)", static_cast<double>(ls.members.size()),
                    d / (8 * a * a), ">=", true);

  const int k_hi = static_cast<int>(std::floor(0.5 * std::log2(1 / (8 * d)) + 1e-12));
  rep.parameters["energy_k_max"] = k_hi;
  if (k_hi < 2) {
    const EnergyReport e = additive_energy(ls.members, 2);
    detail::add_check(rep, "T_2(R_alpha) <= 8 delta / alpha^4", static_cast<double>(e.t_k),
                      8 * d / std::pow(a, 4), "<=", false);
    rep.notes.push_back("energy range 2 <= k <= log(1/(8 delta))/2 is empty; T_2 reported only");
  }
  for (int k = 2; k <= k_hi; ++k) {
    const EnergyReport e = additive_energy(ls.members, k);
    detail::add_check(rep, "T_" + std::to_string(k) + "(R_alpha) <= 8 delta / alpha^" + std::to_string(2 * k),
                      static_cast<double>(e.t_k), 8 * d / std::pow(a, 2.0 * k), "<=", true);
  }
  detail::settle_verdict(rep);
  return rep;
}

BernsteinTail bernstein_tail(double n, double sigma2, double t) {
  if (!(n > 0) || !(sigma2 > 0) || !(t >= 0)) throw PreconditionError("need n > 0, sigma^2 > 0, t >= 0");
  return {4.0 * std::exp(-n * n * t * t / (8.0 * sigma2)), sigma2 >= 6.0 * n * t};
}

SupportFamily sample_support_family(unsigned n, int k, int r, int t, std::mt19937_64& rng,
                                    bool relaxed, int max_attempts) {
  if (n < 1 || n > 64) throw PreconditionError("support families need 1 <= n <= 64");
  if (k < 1 || t < 1 || r < 1) throw PreconditionError("need k, r, t >= 1");
  if (2 * k > static_cast<int>(n)) throw PreconditionError("need 2k <= n");
  if (!relaxed && (r < 4 || 2 * r > k)) throw PreconditionError("need 4 <= r <= k/2");

  SupportFamily fam;
  const double nd = n;
  fam.condition_lhs1 = k * static_cast<double>(t) / (288.0 * nd * std::log(8.0 * nd));
  fam.condition_lhs2 = static_cast<double>(t) * t * std::pow(2.0, k) *
                       binomial(static_cast<int>(n) - k, k - (k + r - 1) / r) /
                       binomial(static_cast<int>(n), k);
  fam.bernstein_failure = 4.0 * nd * std::exp(-k * static_cast<double>(t) / (288.0 * nd));
  fam.conditions_hold = fam.condition_lhs1 > 1 && fam.condition_lhs2 <= 0.5;
  if (!relaxed && !fam.conditions_hold)
    throw PreconditionError("support family conditions fail; rerun relaxed");

  const double meet_bound = 2.0 * t * k * static_cast<double>(k) / nd;
  std::vector<unsigned> coords(n);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    fam.attempts = attempt;
    fam.sets.clear();
    for (int i = 0; i < t; ++i) {
      std::iota(coords.begin(), coords.end(), 0u);
      std::uint64_t mask = 0;
      for (int j = 0; j < k; ++j) {
        std::uniform_int_distribution<unsigned> pick(j, n - 1);
        std::swap(coords[j], coords[pick(rng)]);
        mask |= 1ULL << coords[j];
      }
      fam.sets.push_back(mask);
    }
    bool ok = true;
    for (int i = 0; i < t && ok; ++i) {
      int meets = 0;
      for (int j = 0; j < t; ++j) {
        const int common = std::popcount(fam.sets[i] & fam.sets[j]);
        if (common > 0) ++meets;
        if (i != j && static_cast<double>(common) * r >= k) ok = false;
      }
      if (meets > meet_bound) ok = false;
    }
    if (ok) return fam;
  }
  throw RetriesExhausted("no support family found within the retry cap");
}

ConstructionReport construct_cube_random(const CubeConstructionConfig& cfg) {
  validate_cube(cfg);
  const double d = cfg.delta, a = cfg.alpha;
  if (!(32 * d * d <= a)) throw PreconditionError("need 32 delta^2 <= alpha");
  const int k = cfg.k_prime();
  const int t = cfg.t();
  constexpr int r = 32;
  if (k < 1) throw PreconditionError("alpha too large: k = 0");
  if (k > 24) throw PreconditionError("k > 24: sign search too large");

  std::mt19937_64 rng(cfg.seed);
  const SupportFamily fam = sample_support_family(cfg.n, k, r, t, rng, cfg.relaxed);
  const bool literal = fam.conditions_hold && !cfg.relaxed;

  const GroupDescriptor g = GroupDescriptor::cube(cfg.n);
  const std::uint64_t order = g.order();
  const double n_total = static_cast<double>(order);
  ConstructionReport rep(g);
  rep.construction = "cube-random";
  rep.delta = d;
  rep.alpha = a;
  rep.regime = literal ? Regime::literal : Regime::relaxed;
  rep.parameters["k"] = k;
  rep.parameters["t"] = t;
  rep.parameters["r"] = r;
  rep.parameters["n"] = cfg.n;
  rep.parameters["family_attempts"] = fam.attempts;
  rep.parameters["condition_lhs1"] = fam.condition_lhs1;
  rep.parameters["condition_lhs2"] = fam.condition_lhs2;
  rep.parameters["bernstein_failure"] = fam.bernstein_failure;
  if (!fam.conditions_hold) rep.notes.push_back("support family conditions waived");

  std::vector<char> in(order, 0);
  std::size_t size = 0;
  const std::uint64_t signs = 1ULL << k;
  for (int i = 0; i < t; ++i) {
    const std::uint64_t support = fam.sets[i];
    std::uint64_t eps = 0;
    if (i > 0) {
      std::vector<std::uint64_t> hist(signs, 0);
      for (Element x = 0; x < order; ++x)
        if (in[x]) ++hist[project(x, support)];
      eps = static_cast<std::uint64_t>(std::min_element(hist.begin(), hist.end()) - hist.begin());
      detail::add_check(rep, "sign overlap <= |C_d| 2^-k (step " + std::to_string(i + 1) + ")",
                        static_cast<double>(hist[eps]), static_cast<double>(size) / signs, "<=", true);
      detail::add_check(rep, "sign overlap <= 8 delta 2^-k N (step " + std::to_string(i + 1) + ")",
                        static_cast<double>(hist[eps]), 8 * d * n_total / signs, "<=", false);
    }
    rep.parameters["eps_" + std::to_string(i + 1)] = static_cast<double>(eps);
    rep.parameters["support_" + std::to_string(i + 1)] = static_cast<double>(support);
    // P_i = { x : x_j = eps_j for j in A_i }; enumerate free coordinates.
    const std::uint64_t fixed = deposit(eps, support);
    const std::uint64_t free = (order - 1) & ~support;
    std::uint64_t sub = 0;
    do {
      const Element x = fixed | sub;
      if (!in[x]) {
        in[x] = 1;
        ++size;
      }
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  rep.set = from_table(g, in);
  const GroupSubset subspaces = span_union(g, fam.sets);
  if (t == 1) rep.target = subspaces;

  const LargeSpectrum ls = detail::record_spectrum(rep, transform(rep.set), cfg.seed);
  const double sz = static_cast<double>(rep.set.size());
  detail::add_check(rep, "|A| >= delta 2^n", sz, d * n_total, ">=", true);
  detail::add_check(rep, "|A| <= 8 delta 2^n", sz, 8 * d * n_total, "<=", true);
  std::size_t outside = 0;
  for (Element x : ls.members.elements())
    if (!subspaces.contains(x)) ++outside;
  detail::add_check(rep, "R_alpha inside union of L_i (outside count)", static_cast<double>(outside), 0,
                    "<=", true);
  std::size_t missing = 0;
  for (std::uint64_t s : fam.sets) {
    std::vector<Element> li;
    add_span(s, li);
    for (Element x : li)
      if (8 * std::popcount(x) >= k && !ls.members.contains(x)) ++missing;
  }
  detail::add_check(rep, "union of M_i inside R_alpha (missing)", static_cast<double>(missing), 0, "<=",
                    true);
  detail::add_check(rep, "|R_alpha| >= delta / (8 alpha^2)", static_cast<double>(ls.members.size()),
                    d / (8 * a * a), ">=", true);
  const EnergyReport e = additive_energy(ls.members, 2);
  detail::add_check(rep, "T_2(R_alpha) <= 16 delta / alpha^4", static_cast<double>(e.t_k),
                    16 * d / std::pow(a, 4), "<=", true);
  detail::settle_verdict(rep);
  return rep;
}

}  // namespace spectra
