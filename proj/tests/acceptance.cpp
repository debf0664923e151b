// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spectra/bounds.hpp"
#include "spectra/constructions.hpp"
#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"
#include "spectra/fourier.hpp"
#include "spectra/reference.hpp"

using namespace spectra;

namespace {

constexpr double kTransformTol = 1e-9;
constexpr double kParsevalTol = 1e-9;
constexpr double kMassTol = 1e-9;
constexpr double kGreenLow = 0.25;
constexpr double kGreenHigh = 0.5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Instances whose large spectra feed the Chang-bound criterion.
struct ChangInstance {
  GroupSubset spectrum;
  double delta;
  double alpha;
};
std::vector<ChangInstance> chang_pool;

GroupSubset random_set(const GroupDescriptor& g, std::size_t size, std::mt19937_64& rng) {
  std::vector<Element> all(g.order());
  for (Element x = 0; x < g.order(); ++x) all[x] = x;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min<std::size_t>(size, all.size()));
  return GroupSubset(g, std::move(all));
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome transforms() {
  std::mt19937_64 rng(101);
  double worst = 0;
  int sets = 0;
  for (std::uint64_t n = 2; n <= 256; ++n) {
    const auto g = GroupDescriptor::cyclic(n);
    const GroupSubset a = random_set(g, 1 + rng() % n, rng);
    const auto fast = dft_cyclic(a);
    const auto slow = reference::dft_direct(a.indicator());
    for (Element r = 0; r < n; ++r) worst = std::max(worst, std::abs(fast[r] - slow[r]));
    ++sets;
  }
  bool exact = true;
  for (unsigned n = 1; n <= 12; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      const auto g = GroupDescriptor::cube(n);
      const GroupSubset a = random_set(g, 1 + rng() % g.order(), rng);
      const auto fast = wht_cube(a);
      const auto slow = reference::wht_direct(a.indicator());
      for (Element r = 0; r < g.order(); ++r) exact = exact && fast[r].real() == slow[r];
      ++sets;
    }
  return {worst <= kTransformTol && exact,
          fmt("max |dft - direct| = %.3g", worst) + ", wht exact = " + (exact ? "yes" : "no") + ", " +
              std::to_string(sets) + " sets"};
}

Outcome parseval() {
  std::mt19937_64 rng(202);
  double worst = 0;
  for (int i = 0; i < 500; ++i) {
    GroupDescriptor g = GroupDescriptor::cyclic(2);
    if (i % 2 == 0) {
      const double e = std::uniform_real_distribution<double>(1, 20)(rng);
      g = GroupDescriptor::cyclic(static_cast<std::uint64_t>(std::exp2(e)));
    } else {
      g = GroupDescriptor::cube(1 + static_cast<unsigned>(rng() % 20));
    }
    const double density = std::uniform_real_distribution<double>(0.01, 0.6)(rng);
    std::vector<Element> xs;
    std::bernoulli_distribution keep(density);
    for (Element x = 0; x < g.order(); ++x)
      if (keep(rng)) xs.push_back(x);
    if (xs.empty()) xs.push_back(0);
    const GroupSubset a(g, xs);
    worst = std::max(worst, parseval_check(a, transform(a)));
  }
  return {worst <= kParsevalTol, fmt("max relative residual %.3g over 500 sets", worst)};
}

Outcome energy_cross() {
  std::mt19937_64 rng(303);
  int mismatches = 0, runs = 0;
  for (int kind = 0; kind < 2; ++kind)
    for (int i = 0; i < 100; ++i) {
      const GroupDescriptor g = kind == 0 ? GroupDescriptor::cyclic(13 + rng() % 2000)
                                          : GroupDescriptor::cube(4 + static_cast<unsigned>(rng() % 9));
      const GroupSubset b = random_set(g, 1 + rng() % 12, rng);
      for (int k = 2; k <= 3; ++k) {
        mismatches += energy_bruteforce(b, k).t_k != energy_via_fourier(b, k).t_k;
        ++runs;
      }
    }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(runs) + " comparisons"};
}

// Union of random affine subspaces of Z_2^n.
GroupSubset structured_cube_set(unsigned n, std::mt19937_64& rng) {
  const auto g = GroupDescriptor::cube(n);
  std::vector<Element> xs;
  const int pieces = 1 + static_cast<int>(rng() % 3);
  for (int p = 0; p < pieces; ++p) {
    const int codim = 1 + static_cast<int>(rng() % 4);
    std::vector<std::pair<Element, int>> eqs;
    for (int c = 0; c < codim; ++c) eqs.emplace_back(1 + rng() % (g.order() - 1), static_cast<int>(rng() % 2));
    for (Element x = 0; x < g.order(); ++x) {
      bool in = true;
      for (const auto& [a, b] : eqs) in = in && (std::popcount(a & x) % 2 == b);
      if (in) xs.push_back(x);
    }
  }
  return GroupSubset(g, xs);
}

Outcome tmain_suite() {
  std::mt19937_64 rng(404);
  int violations = 0, checks = 0, nonempty = 0;
  auto run = [&](const GroupSubset& a, double alpha) {
    const LargeSpectrum ls = large_spectrum(a, alpha);
    chang_pool.push_back({ls.members, a.density(), alpha});
    const GroupSubset b = ls.nonzero_members();
    nonempty += !b.empty();
    for (int k = 2; k <= 3; ++k) {
      violations += !check_tmain(ls, b, k).verdict;
      ++checks;
    }
  };
  for (int i = 0; i < 200; ++i) {
    const auto g = GroupDescriptor::cyclic(64 + rng() % 961);
    const double delta = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    const GroupSubset a =
        random_set(g, std::max<std::size_t>(1, static_cast<std::size_t>(delta * g.order())), rng);
    run(a, std::uniform_real_distribution<double>(0.005, std::min(a.density(), 0.05))(rng));
  }
  for (int i = 0; i < 50; ++i) {
    const GroupSubset a = structured_cube_set(10, rng);
    const double d = a.density();
    run(a, std::uniform_real_distribution<double>(d / 8, d / 2)(rng));
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " checks (" +
                               std::to_string(nonempty) + "/250 with nonempty B)"};
}

Outcome cube_union() {
  CubeConstructionConfig cfg;
  cfg.n = 24;
  cfg.delta = std::ldexp(1.0, -5);
  cfg.alpha = std::ldexp(1.0, -6);
  const ConstructionReport rep = construct_cube_union(cfg);
  chang_pool.push_back({rep.spectrum, rep.set.density(), cfg.alpha});
  const double total = std::ldexp(1.0, 24);
  const double size = static_cast<double>(rep.set.size());
  const bool size_ok = size >= cfg.delta * total && size <= 8 * cfg.delta * total;
  const double spec_bound = cfg.delta / (8 * cfg.alpha * cfg.alpha);
  const std::uint64_t t2 = additive_energy(rep.spectrum, 2).t_k;
  const double t2_bound = 8 * cfg.delta / std::pow(cfg.alpha, 4);
  const bool equal = rep.target.has_value() && rep.spectrum == *rep.target;
  const bool literal = rep.regime == Regime::literal;
  const bool pass = size_ok && static_cast<double>(rep.spectrum.size()) >= spec_bound &&
                    static_cast<double>(t2) <= t2_bound && equal && literal && rep.cross_check_pass;
  return {pass, "|A| = " + std::to_string(rep.set.size()) + ", |R| = " + std::to_string(rep.spectrum.size()) +
                    fmt(" >= %.0f", spec_bound) + ", T_2 = " + std::to_string(t2) + fmt(" <= %.0f", t2_bound) +
                    ", R = union L_i: " + (equal ? "yes" : "no") + ", regime " + to_string(rep.regime)};
}

Outcome riesz_windows_suite() {
  std::mt19937_64 rng(606);
  const std::uint64_t n = 65537;
  const auto g = GroupDescriptor::cyclic(n);
  int points = 0, failures = 0;
  double worst_mass = 0;
  const std::vector<double> deltas{0.1, 0.2, 0.3, 0.4};
  while (points < 20) {
    const double delta = deltas[points % deltas.size()];
    const double alpha = delta * std::ldexp(1.0, -3 - static_cast<int>(rng() % 8));
    const std::size_t cap = static_cast<std::size_t>(delta / (3 * alpha) * std::log2(1 / delta));
    const std::size_t m = 1 + rng() % std::min<std::size_t>(cap, 6);
    const GroupSubset lambda = random_set(g, m, rng);
    if (lambda.contains(0)) continue;
    MembershipOptions opt;
    opt.throw_on_budget = true;
    if (!family_membership(lambda, {2, std::nullopt, 1, 1}, FamilyVariant::k_dissociated, {}, opt).verdict) continue;
    const RieszConfig cfg{delta, alpha, false};
    if (delta * std::pow(1 + 2 * riesz_constant() * alpha / delta, static_cast<double>(m)) > 1) continue;
    const DensityFunction f = riesz_product(lambda, cfg);
    const RieszWindows w = riesz_windows(transform(f), lambda, alpha);
    const double mass = std::abs(f.sum() - delta * n) / (delta * n);
    worst_mass = std::max(worst_mass, mass);
    failures += !(w.min_on_lambda >= w.lower && w.max_off_lambda <= w.upper && mass <= kMassTol);
    ++points;
  }
  return {failures == 0,
          std::to_string(failures) + " failing of " + std::to_string(points) + fmt(" points, max mass error %.3g", worst_mass)};
}

Outcome green_window() {
  const std::uint64_t n = 65537;
  const auto g = GroupDescriptor::cyclic(n);
  bool pass = true;
  std::string detail;
  for (int k1 : {1, 2, 4, 8}) {
    std::vector<Element> block;
    Element x = 1;
    for (int i = 0; i < k1; ++i, x *= 3) block.push_back(x);
    const DensityFunction gf = green_plus_function(g, {block});
    const double p = 1;
    const double coeff = transform(gf)[block[0]].real();
    const double q = coeff * std::sqrt(k1) * std::exp2(p + 1) / static_cast<double>(n);
    const double literal = coeff * std::sqrt(k1) * std::exp2(p) / static_cast<double>(n);
    const double mass = std::abs(gf.sum() - static_cast<double>(n) / 2) / (static_cast<double>(n) / 2);
    pass = pass && q >= kGreenLow && q <= kGreenHigh && mass <= kMassTol;
    detail += "k1=" + std::to_string(k1) + fmt(": %.4f", q) + fmt(" (2^p readout %.4f)", literal) + "; ";
  }
  return {pass, detail + "readout uses 2^(p+1)"};
}

Outcome end_to_end() {
  const auto g = GroupDescriptor::cyclic(1000003);
  QuantizerConfig q;
  q.tau = 20;
  q.max_retries = 50;
  const ConstructionReport pre = construct_prescribed_small(GroupSubset(g, {0, 5, 999998}), 0.2, 0.05, q, 50);
  chang_pool.push_back({pre.spectrum, pre.set.density(), 0.05});
  const ConstructionReport rz = construct_riesz(GroupSubset(g, {1, 2}), {0.4, 0.05, true}, q, 50);
  chang_pool.push_back({rz.spectrum, rz.set.density(), 0.05});
  const std::vector<Element> want{0, 1, 2, 1000001, 1000002};
  const bool ok_pre = pre.spectrum.element_vector() == std::vector<Element>{0, 5, 999998} && pre.verdict;
  const bool ok_rz = rz.spectrum.element_vector() == want && rz.verdict;
  return {ok_pre && ok_rz, std::string("prescribed ") + (ok_pre ? "equal" : "differs") + " (trials " +
                               std::to_string(pre.retries) + "), riesz {1,2} relaxed " + (ok_rz ? "equal" : "differs")};
}

Outcome chang() {
  int failures = 0;
  for (const auto& inst : chang_pool) {
    const double bound = evaluate_bound("chang", {{"delta", inst.delta}, {"alpha", inst.alpha}});
    failures += static_cast<double>(max_dissociated_subset(inst.spectrum).lambda.size()) > bound;
  }
  return {failures == 0 && chang_pool.size() == 253,
          std::to_string(failures) + " violations over " + std::to_string(chang_pool.size()) + " instances"};
}

Outcome properties() {
  std::mt19937_64 rng(1010);
  const auto g = GroupDescriptor::cyclic(101);
  int chain = 0, witness = 0, span_bad = 0, falses = 0, spans = 0;
  for (int i = 0; i < 100; ++i) {
    const GroupSubset set = random_set(g, 2 + rng() % 4, rng);
    const int k = 1 + static_cast<int>(rng() % 3), s = 1 + static_cast<int>(rng() % 3);
    const auto big = family_membership(set, {k * s, s, 1, 1}, FamilyVariant::Lambda_ks);
    const auto tilde = family_membership(set, {k, s, 1, 1}, FamilyVariant::tilde);
    const auto small = family_membership(set, {k, s, 1, 1}, FamilyVariant::Lambda_ks);
    chain += (big.verdict && !tilde.verdict) || (tilde.verdict && !small.verdict);
    for (const auto* c : {&big, &tilde, &small})
      if (!c->verdict) {
        ++falses;
        witness += !verify_witness(*c);
      }
  }
  const auto wide = GroupDescriptor::cyclic(1000003);
  while (spans < 40) {
    const GroupSubset lam = random_set(wide, 1 + rng() % 8, rng);
    if (!family_membership(lam, {2, std::nullopt, 1, 1}, FamilyVariant::k_dissociated).verdict) continue;
    span_bad += span(lam).size() != static_cast<std::size_t>(std::pow(3, lam.size()));
    ++spans;
  }
  return {chain == 0 && witness == 0 && span_bad == 0,
          std::to_string(chain) + " chain breaks, " + std::to_string(witness) + "/" + std::to_string(falses) +
              " bad witnesses, " + std::to_string(span_bad) + "/" + std::to_string(spans) + " span size mismatches"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "transform correctness", 30, transforms},
      {2, "parseval", 60, parseval},
      {3, "energy cross-validation", 60, energy_cross},
      {4, "T_k lower bound", 300, tmain_suite},
      {5, "deterministic cube construction", 120, cube_union},
      {6, "riesz windows", 120, riesz_windows_suite},
      {7, "green coefficient window", 60, green_window},
      {8, "end-to-end spectrum equality", 600, end_to_end},
      {9, "chang bound", 60, chang},
      {10, "property suites", 120, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s [%.1fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
