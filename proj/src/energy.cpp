#include "spectra/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "spectra/errors.hpp"
#include "spectra/kernels.hpp"

namespace spectra {

GroupSubset LargeSpectrum::nonzero_members() const {
  std::vector<Element> out;
  for (Element r : members.elements())
    if (r != 0) out.push_back(r);
  return GroupSubset(members.group(), std::move(out));
}

LargeSpectrum large_spectrum(const GroupSubset& set, double alpha, double eta) {
  return large_spectrum(set, transform(set), alpha, eta);
}

LargeSpectrum large_spectrum(const GroupSubset& set, const SpectrumTable& spectrum, double alpha,
                             double eta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw PreconditionError("alpha must lie in (0, 1]");
  if (!(eta >= 0.0)) throw PreconditionError("eta must be non-negative");
  const GroupDescriptor& g = set.group();
  if (!(g == spectrum.group())) throw GroupMismatch("set and spectrum groups differ");
  const double order = static_cast<double>(g.order());
  const double threshold = (alpha - eta) * order;
  const double target = alpha * order;

  LargeSpectrum out{set, alpha, set.density(), eta, GroupSubset(g), {}, {}};
  std::vector<Element> members;
  for (Element r = 0; r < g.order(); ++r) {
    // |A^(-r)| = |A^(r)| for real A; averaging the two stored values keeps
    // the computed spectrum exactly symmetric.
    const double m = 0.5 * (spectrum.magnitude(r) + spectrum.magnitude(g.neg(r)));
    if (m >= threshold) members.push_back(r);
    if (std::fabs(m - target) <= eta * order) out.boundary_marginals.push_back(r);
  }
  out.members = GroupSubset(g, std::move(members));
  out.magnitudes.reserve(out.members.size());
  for (Element r : out.members.elements()) out.magnitudes.push_back(spectrum.magnitude(r));
  return out;
}

std::uint64_t RepresentationCounts::at(Element n) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), n,
                             [](const auto& p, Element v) { return p.first < v; });
  return (it != counts.end() && it->first == n) ? it->second : 0;
}

std::uint64_t RepresentationCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& [x, c] : counts) t += c;
  return t;
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

std::vector<std::pair<Element, std::uint64_t>> sorted_counts(
    const std::unordered_map<Element, std::uint64_t>& m) {
  std::vector<std::pair<Element, std::uint64_t>> v(m.begin(), m.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

RepresentationCounts representation_counts(const GroupSubset& base, int order,
                                           TupleConvention convention, double budget) {
  if (order < 0) throw PreconditionError("order must be non-negative");
  const GroupDescriptor& g = base.group();
  const std::size_t m = base.size();
  RepresentationCounts out{g, base.element_vector(), order, convention, {}};

  if (convention == TupleConvention::ordered_signed) {
    if (std::pow(2.0 * static_cast<double>(m), order) > budget)
      throw BudgetExceeded("(2|base|)^s exceeds the representation budget");
    std::unordered_map<Element, std::uint64_t> cur{{0, 1}};
    for (int step = 0; step < order; ++step) {
      std::unordered_map<Element, std::uint64_t> next;
      for (const auto& [x, c] : cur) {
        for (Element r : base.elements()) {
          next[g.add(x, r)] += c;
          next[g.sub(x, r)] += c;
        }
      }
      cur = std::move(next);
    }
    out.counts = sorted_counts(cur);
    return out;
  }

  if (static_cast<std::size_t>(order) > m) return out;
  if (binomial(m, static_cast<std::size_t>(order)) * std::pow(2.0, order) > budget)
    throw BudgetExceeded("C(|base|, s) 2^s exceeds the representation budget");
  // layer[j] maps a sum to the number of signed j-subsets of the prefix.
  std::vector<std::unordered_map<Element, std::uint64_t>> layer(order + 1);
  layer[0][0] = 1;
  for (Element r : base.elements()) {
    for (int j = order; j >= 1; --j) {
      for (const auto& [x, c] : layer[j - 1]) {
        layer[j][g.add(x, r)] += c;
        layer[j][g.sub(x, r)] += c;
      }
    }
  }
  out.counts = sorted_counts(layer[order]);
  return out;
}

std::string to_string(EnergyMethod method) {
  return method == EnergyMethod::bruteforce ? "bruteforce" : "fourier";
}

EnergyReport energy_bruteforce(const GroupSubset& base, int k, double budget) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  const double tuples = std::pow(static_cast<double>(base.size()), k);
  if (tuples > budget) throw BudgetExceeded("|B|^k exceeds the brute-force budget");
  const GroupDescriptor& g = base.group();
  const auto elems = base.elements();
  const std::size_t m = elems.size();
  EnergyReport out{base, k, 0, EnergyMethod::bruteforce, 0.0};
  if (m == 0) return out;

  // Odometer over k-tuples with running prefix sums.
  std::vector<std::size_t> idx(k, 0);
  std::vector<Element> prefix(k + 1, 0);
  for (int i = 0; i < k; ++i) prefix[i + 1] = g.add(prefix[i], elems[0]);

  const bool dense = g.order() <= (std::uint64_t{1} << 22);
  std::vector<std::uint32_t> table(dense ? g.order() : 0, 0);
  std::unordered_map<Element, std::uint32_t> sparse;
  std::vector<Element> touched;
  while (true) {
    const Element s = prefix[k];
    if (dense) {
      if (table[s]++ == 0) touched.push_back(s);
    } else {
      ++sparse[s];
    }
    int pos = k - 1;
    while (pos >= 0 && ++idx[pos] == m) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    for (int i = pos; i < k; ++i) prefix[i + 1] = g.add(prefix[i], elems[idx[i]]);
  }
  std::uint64_t total = 0;
  if (dense) {
    for (Element s : touched) total += std::uint64_t{table[s]} * table[s];
  } else {
    for (const auto& [s, c] : sparse) total += std::uint64_t{c} * c;
  }
  out.t_k = total;
  return out;
}

EnergyReport energy_via_fourier(const GroupSubset& base, int k) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  const SpectrumTable spec = transform(base);
  const long double sum = kernels::ordered_sum(spec.size(), [&](std::size_t r) {
    return std::pow(static_cast<long double>(spec.norm(static_cast<Element>(r))), k);
  });
  const long double value = sum / static_cast<long double>(spec.size());
  const long double rounded = std::nearbyint(value);
  const double residual = static_cast<double>(std::fabs(value - rounded));
  if (residual > 0.4) throw NumericFailure("Fourier-side energy is not close to an integer");
  if (rounded < 0 || rounded > 1.8e19L) throw NumericFailure("Fourier-side energy out of range");
  return EnergyReport{base, k, static_cast<std::uint64_t>(rounded), EnergyMethod::fourier, residual};
}

EnergyReport additive_energy(const GroupSubset& base, int k) {
  if (std::pow(static_cast<double>(base.size()), k) <= 1e7) return energy_bruteforce(base, k);
  return energy_via_fourier(base, k);
}

double tmain_lower_bound(double delta, double alpha, int k, std::size_t m) {
  if (!(alpha > 0.0 && alpha <= delta && delta <= 1.0))
    throw PreconditionError("need 0 < alpha <= delta <= 1");
  if (k < 2) throw PreconditionError("need k >= 2");
  const long double d = delta, a = alpha, mm = static_cast<long double>(m);
  const long double v = d * std::pow(a * mm / d, 2.0L * k) / std::pow(2.0L, 4.0L * k);
  return static_cast<double>(v);
}

TmainVerdict check_tmain(const LargeSpectrum& spectrum, const GroupSubset& base, int k) {
  if (!(base.group() == spectrum.members.group())) throw GroupMismatch("B and A live in different groups");
  for (Element b : base.elements()) {
    if (b == 0 || !spectrum.members.contains(b))
      throw PreconditionError("B must be a subset of R_alpha(A) \\ {0}");
  }
  TmainVerdict v;
  v.delta = spectrum.delta;
  v.alpha = spectrum.alpha;
  v.k = k;
  v.base_size = base.size();
  v.bound = tmain_lower_bound(v.delta, v.alpha, k, base.size());
  if (base.empty()) {
    v.verdict = true;
    return v;
  }
  const EnergyReport e = additive_energy(base, k);
  v.t_k = e.t_k;
  v.method = e.method;
  v.verdict = static_cast<double>(v.t_k) >= v.bound;
  return v;
}

TmainVerdict check_tmain(const GroupSubset& set, double alpha, const GroupSubset& base, int k,
                         double eta) {
  return check_tmain(large_spectrum(set, alpha, eta), base, k);
}

}  // namespace spectra
