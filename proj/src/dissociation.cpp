#include "spectra/dissociation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "spectra/errors.hpp"

namespace spectra {

std::string to_string(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::plain: return "plain";
    case FamilyVariant::k_dissociated: return "k_dissociated";
    case FamilyVariant::Lambda_ks: return "Lambda_ks";
    case FamilyVariant::Lambda_k_inf: return "Lambda_k_inf";
    case FamilyVariant::tilde: return "tilde";
    case FamilyVariant::partitioned: return "partitioned";
    case FamilyVariant::rank_d: return "rank_d";
  }
  return "unknown";
}

FamilyVariant parse_variant(const std::string& name) {
  for (auto v : {FamilyVariant::plain, FamilyVariant::k_dissociated, FamilyVariant::Lambda_ks,
                 FamilyVariant::Lambda_k_inf, FamilyVariant::tilde, FamilyVariant::partitioned,
                 FamilyVariant::rank_d}) {
    if (to_string(v) == name) return v;
  }
  throw PreconditionError("unknown family variant: " + name);
}

Element evaluate_row(const GroupSubset& set, const IntRow& row) {
  if (row.size() != set.size()) throw PreconditionError("row length != |set|");
  const GroupDescriptor& g = set.group();
  Element acc = 0;
  for (std::size_t i = 0; i < row.size(); ++i) acc = g.add(acc, g.scale(row[i], set.elements()[i]));
  return acc;
}

namespace {

// Coefficient constraints shared by every variant: |c_i| <= coeff, the l1
// norm of c restricted to block b is at most block_l1[b], and at most
// max_nonzero coordinates are nonzero.
struct Constraints {
  int coeff = 1;
  std::vector<int> block;  // per coordinate
  std::vector<int> block_l1;
  int max_nonzero = 0;

  bool admits(const IntRow& row) const {
    std::vector<long long> used(block_l1.size(), 0);
    int nonzero = 0;
    bool any = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const long long a = std::llabs(row[i]);
      if (a == 0) continue;
      any = true;
      if (a > coeff) return false;
      used[block[i]] += a;
      if (used[block[i]] > block_l1[block[i]]) return false;
      if (++nonzero > max_nonzero) return false;
    }
    return any;
  }
};

// Number of coefficient vectors (zero included) meeting the constraints.
double count_vectors(const Constraints& c) {
  const int blocks = static_cast<int>(c.block_l1.size());
  // per block: ways[l1][nz]
  std::vector<double> by_nz(c.max_nonzero + 1, 0.0);
  by_nz[0] = 1.0;
  for (int b = 0; b < blocks; ++b) {
    const int cap = c.block_l1[b];
    std::vector<std::vector<double>> ways(cap + 1, std::vector<double>(c.max_nonzero + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t i = 0; i < c.block.size(); ++i) {
      if (c.block[i] != b) continue;
      auto next = ways;
      for (int l = 0; l <= cap; ++l) {
        for (int z = 0; z < c.max_nonzero; ++z) {
          if (ways[l][z] == 0.0) continue;
          for (int a = 1; a <= c.coeff && l + a <= cap; ++a) next[l + a][z + 1] += 2.0 * ways[l][z];
        }
      }
      ways = std::move(next);
    }
    std::vector<double> block_nz(c.max_nonzero + 1, 0.0);
    for (int l = 0; l <= cap; ++l)
      for (int z = 0; z <= c.max_nonzero; ++z) block_nz[z] += ways[l][z];
    std::vector<double> merged(c.max_nonzero + 1, 0.0);
    for (int z1 = 0; z1 <= c.max_nonzero; ++z1)
      for (int z2 = 0; z1 + z2 <= c.max_nonzero; ++z2) merged[z1 + z2] += by_nz[z1] * block_nz[z2];
    by_nz = std::move(merged);
  }
  return std::accumulate(by_nz.begin(), by_nz.end(), 0.0);
}

struct SearchResult {
  std::vector<IntRow> solutions;  // first solution, or independent rows for rank
  std::uint64_t enumerated = 0;
};

// Depth-first search over sparse coefficient vectors whose first nonzero
// entry is positive. With `rank_target` > 0 the search collects solutions
// until that many independent ones are found; otherwise it stops at the
// first solution.
class SparseSearch {
 public:
  SparseSearch(const GroupSubset& set, const Constraints& c, std::size_t rank_target)
      : set_(set),
        g_(set.group()),
        c_(c),
        rank_target_(rank_target),
        rank_(set.size()),
        row_(set.size(), 0),
        used_(c.block_l1.size(), 0) {}

  SearchResult run() {
    visit(0, 0, 0);
    return std::move(result_);
  }

 private:
  bool done() const {
    return rank_target_ == 0 ? !result_.solutions.empty() : rank_.rank() >= rank_target_;
  }

  void record() {
    if (rank_target_ == 0) {
      result_.solutions.push_back(row_);
    } else if (rank_.try_add(row_)) {
      result_.solutions.push_back(row_);
    }
  }

  void visit(std::size_t from, Element sum, int nonzero) {
    if (nonzero >= c_.max_nonzero) return;
    const auto elems = set_.elements();
    for (std::size_t j = from; j < elems.size(); ++j) {
      const int b = c_.block[j];
      const int room = std::min(c_.coeff, c_.block_l1[b] - used_[b]);
      for (int a = 1; a <= room; ++a) {
        for (int sign : {1, -1}) {
          if (nonzero == 0 && sign < 0) continue;
          const std::int64_t v = sign * a;
          row_[j] = v;
          used_[b] += a;
          const Element next = g_.add(sum, g_.scale(v, elems[j]));
          ++result_.enumerated;
          if (next == 0) record();
          if (!done()) visit(j + 1, next, nonzero + 1);
          used_[b] -= a;
          row_[j] = 0;
          if (done()) return;
        }
      }
    }
  }

  const GroupSubset& set_;
  const GroupDescriptor& g_;
  const Constraints& c_;
  std::size_t rank_target_;
  IncrementalRank rank_;
  IntRow row_;
  std::vector<int> used_;
  SearchResult result_;
};

// Random admissible vectors; used once exhaustive search is over budget.
SearchResult sample_search(const GroupSubset& set, const Constraints& c, std::size_t rank_target,
                           std::uint64_t samples, std::uint64_t seed) {
  SearchResult out;
  const std::size_t n = set.size();
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  IncrementalRank rank(n);
  const int max_nz = std::min<int>(c.max_nonzero, static_cast<int>(n));
  std::uniform_int_distribution<int> nz_dist(1, std::max(1, max_nz));
  std::uniform_int_distribution<int> coeff_dist(1, c.coeff);
  std::vector<std::size_t> idx(n);
  for (std::uint64_t t = 0; t < samples; ++t) {
    IntRow row(n, 0);
    std::iota(idx.begin(), idx.end(), 0);
    const int z = nz_dist(rng);
    for (int i = 0; i < z; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
      const int v = coeff_dist(rng);
      row[idx[i]] = (rng() & 1) ? v : -v;
    }
    ++out.enumerated;
    if (!c.admits(row) || evaluate_row(set, row) != 0) continue;
    if (rank_target == 0) {
      out.solutions.push_back(row);
      return out;
    }
    if (rank.try_add(row)) {
      out.solutions.push_back(row);
      if (rank.rank() >= rank_target) return out;
    }
  }
  return out;
}

int effective_coeff(const FamilyParams& p, FamilyVariant v) {
  switch (v) {
    case FamilyVariant::plain: return 1;
    case FamilyVariant::k_dissociated: return p.k;
    case FamilyVariant::Lambda_k_inf: return p.k;
    case FamilyVariant::tilde:
      if (!p.s) throw PreconditionError("tilde family needs a finite s");
      return *p.s;
    default: return p.s ? std::min(*p.s, p.k) : p.k;
  }
}

Constraints make_constraints(const GroupSubset& set, const FamilyParams& p, FamilyVariant v,
                             const std::vector<int>& partition) {
  const int n = static_cast<int>(set.size());
  Constraints c;
  c.coeff = effective_coeff(p, v);
  c.block.assign(n, 0);
  c.max_nonzero = std::max(n, 1);
  const int unbounded = std::max(1, n * c.coeff);
  switch (v) {
    case FamilyVariant::plain:
    case FamilyVariant::k_dissociated:
      c.block_l1 = {unbounded};
      break;
    case FamilyVariant::tilde:
      c.block_l1 = {unbounded};
      c.max_nonzero = std::min(c.max_nonzero, p.k);
      break;
    case FamilyVariant::Lambda_ks:
    case FamilyVariant::Lambda_k_inf:
    case FamilyVariant::rank_d:
      c.block_l1 = {p.k};
      break;
    case FamilyVariant::partitioned:
      c.block = partition;
      c.block_l1.assign(p.p, p.k);
      break;
  }
  return c;
}

void validate_params(const FamilyParams& p, FamilyVariant v) {
  if (p.k < 1) throw PreconditionError("k must be >= 1");
  if (p.s && *p.s < 1) throw PreconditionError("s must be >= 1");
  if (p.p < 1) throw PreconditionError("p must be >= 1");
  if (p.d < 1) throw PreconditionError("d must be >= 1");
  (void)v;
}

void validate_partition(const std::vector<int>& partition, std::size_t n, int p) {
  if (partition.size() != n) throw PreconditionError("partition length != |set|");
  std::vector<std::size_t> sizes(p, 0);
  for (int b : partition) {
    if (b < 0 || b >= p) throw PreconditionError("partition block index out of range");
    ++sizes[b];
  }
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  if (*lo == 0) throw PreconditionError("partition has an empty block");
  if (*hi > 2 * *lo) throw PreconditionError("partition block sizes differ by more than two times");
}

DissociationCertificate run_family(const GroupSubset& set, const FamilyParams& params,
                                   FamilyVariant variant, const std::vector<int>& partition,
                                   const MembershipOptions& opt) {
  DissociationCertificate cert{set, params, variant, true, {}, partition, true, 0};
  const Constraints c = make_constraints(set, params, variant, partition);
  const std::size_t rank_target = variant == FamilyVariant::rank_d ? params.d : 0;
  const double total = count_vectors(c);
  SearchResult r;
  if (total <= opt.budget) {
    r = SparseSearch(set, c, rank_target).run();
  } else {
    if (opt.throw_on_budget) throw BudgetExceeded("family enumeration exceeds the budget");
    cert.exhaustive = false;
    r = sample_search(set, c, rank_target, opt.fallback_samples, opt.seed);
  }
  cert.enumerated = r.enumerated;
  if (rank_target == 0) {
    if (!r.solutions.empty()) {
      cert.verdict = false;
      cert.witness = {r.solutions.front()};
    }
  } else if (r.solutions.size() >= rank_target) {
    cert.verdict = false;
    cert.witness = std::move(r.solutions);
  }
  return cert;
}

std::vector<int> balanced_partition(std::size_t n, int p, std::mt19937_64& rng) {
  std::vector<int> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[i] = static_cast<int>(i % p);
  std::shuffle(blocks.begin(), blocks.end(), rng);
  return blocks;
}

// Meet in the middle over eps in {-1,0,1}^n.
DissociationCertificate dissociated_mitm(const GroupSubset& set) {
  const GroupDescriptor& g = set.group();
  const auto elems = set.elements();
  const std::size_t n = elems.size();
  const std::size_t h = (n + 1) / 2;
  DissociationCertificate cert{set, FamilyParams{}, FamilyVariant::plain, true, {}, {}, true, 0};

  auto enumerate = [&](std::size_t begin, std::size_t end) {
    std::uint64_t count = 1;
    for (std::size_t i = begin; i < end; ++i) count *= 3;
    std::vector<std::pair<Element, std::uint64_t>> sums;
    sums.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
      Element acc = 0;
      std::uint64_t c = code;
      for (std::size_t i = begin; i < end; ++i, c /= 3) {
        const auto digit = c % 3;
        if (digit == 1) acc = g.add(acc, elems[i]);
        if (digit == 2) acc = g.sub(acc, elems[i]);
      }
      sums.emplace_back(acc, code);
    }
    return sums;
  };
  auto decode = [&](IntRow& row, std::size_t begin, std::size_t end, std::uint64_t code) {
    for (std::size_t i = begin; i < end; ++i, code /= 3) {
      const auto digit = code % 3;
      row[i] = digit == 0 ? 0 : (digit == 1 ? 1 : -1);
    }
  };

  auto left = enumerate(0, h);
  cert.enumerated += left.size();
  for (const auto& [s, code] : left) {
    if (code != 0 && s == 0) {
      IntRow row(n, 0);
      decode(row, 0, h, code);
      cert.verdict = false;
      cert.witness = {row};
      return cert;
    }
  }
  std::stable_sort(left.begin(), left.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const auto right = enumerate(h, n);
  cert.enumerated += right.size();
  for (const auto& [s, code] : right) {
    if (code == 0) continue;
    const Element want = g.neg(s);
    auto it = std::lower_bound(left.begin(), left.end(), want,
                               [](const auto& p, Element v) { return p.first < v; });
    if (it != left.end() && it->first == want) {
      IntRow row(n, 0);
      decode(row, 0, h, it->second);
      decode(row, h, n, code);
      cert.verdict = false;
      cert.witness = {row};
      return cert;
    }
  }
  return cert;
}

}  // namespace

DissociationCertificate is_dissociated(const GroupSubset& set, double budget, std::uint64_t seed) {
  const std::size_t n = set.size();
  if (n <= 16 && std::pow(3.0, static_cast<double>(n)) <= budget) {
    MembershipOptions opt;
    opt.budget = budget;
    return run_family(set, FamilyParams{}, FamilyVariant::plain, {}, opt);
  }
  const double half = std::pow(3.0, std::ceil(static_cast<double>(n) / 2.0));
  if (half <= std::min(budget, 4782969.0)) return dissociated_mitm(set);
  MembershipOptions opt;
  opt.budget = 0;
  opt.seed = seed;
  return run_family(set, FamilyParams{}, FamilyVariant::plain, {}, opt);
}

DissociationCertificate family_membership(const GroupSubset& set, const FamilyParams& params,
                                          FamilyVariant variant, const std::vector<int>& partition,
                                          const MembershipOptions& options) {
  validate_params(params, variant);
  if (variant != FamilyVariant::partitioned) {
    return run_family(set, params, variant, {}, options);
  }
  if (set.size() < static_cast<std::size_t>(params.p))
    throw PreconditionError("partitioned family needs |set| >= p");
  if (!partition.empty()) {
    validate_partition(partition, set.size(), params.p);
    return run_family(set, params, variant, partition, options);
  }
  if (!options.search_partitions)
    throw PreconditionError("partitioned family needs an explicit partition");
  std::mt19937_64 rng(options.seed);
  DissociationCertificate last{set, params, variant, false, {}, {}, false, 0};
  std::uint64_t enumerated = 0;
  for (int attempt = 0; attempt < options.partition_attempts; ++attempt) {
    const auto blocks = balanced_partition(set.size(), params.p, rng);
    DissociationCertificate c = run_family(set, params, variant, blocks, options);
    enumerated += c.enumerated;
    c.exhaustive = false;
    c.enumerated = enumerated;
    if (c.verdict) return c;
    last = std::move(c);
  }
  return last;
}

bool verify_witness(const DissociationCertificate& cert) {
  if (cert.verdict) return true;
  if (cert.witness.empty()) return false;
  const Constraints c = make_constraints(cert.set, cert.params, cert.variant, cert.partition);
  for (const IntRow& row : cert.witness) {
    if (row.size() != cert.set.size()) return false;
    if (!c.admits(row)) return false;
    if (evaluate_row(cert.set, row) != 0) return false;
  }
  if (cert.variant == FamilyVariant::rank_d) {
    return cert.witness.size() == static_cast<std::size_t>(cert.params.d) &&
           rational_rank(cert.witness) == static_cast<std::size_t>(cert.params.d);
  }
  return cert.witness.size() == 1;
}

GroupSubset span(const GroupSubset& set, double budget) {
  if (std::pow(3.0, static_cast<double>(set.size())) > budget)
    throw BudgetExceeded("3^|E| exceeds the span budget");
  const GroupDescriptor& g = set.group();
  std::vector<Element> sums{0};
  for (Element e : set.elements()) {
    std::vector<Element> next;
    next.reserve(sums.size() * 3);
    for (Element s : sums) {
      next.push_back(s);
      next.push_back(g.add(s, e));
      next.push_back(g.sub(s, e));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sums.swap(next);
  }
  return GroupSubset(g, std::move(sums));
}

DissociatedSubset max_dissociated_subset(const GroupSubset& set) {
  if (set.size() > 10000) throw PreconditionError("max_dissociated_subset needs |R| <= 10^4");
  const GroupDescriptor& g = set.group();
  const bool dense = g.order() <= (std::uint64_t{1} << 28);
  std::vector<bool> bitmap(dense ? g.order() : 0, false);
  std::unordered_set<Element> hashed;
  std::vector<Element> members{0};
  auto in_span = [&](Element x) { return dense ? bitmap[x] : hashed.count(x) > 0; };
  auto insert = [&](Element x) {
    if (in_span(x)) return;
    if (dense) {
      bitmap[x] = true;
    } else {
      hashed.insert(x);
    }
    members.push_back(x);
  };
  if (dense) {
    bitmap[0] = true;
  } else {
    hashed.insert(0);
  }

  std::vector<Element> kept;
  for (Element x : set.elements()) {
    if (in_span(x)) continue;
    kept.push_back(x);
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Element s = members[i];
      insert(g.add(s, x));
      insert(g.sub(s, x));
    }
  }
  DissociatedSubset out{GroupSubset(g, std::move(kept)), members.size(), true};
  for (Element x : set.elements()) out.covers = out.covers && in_span(x);
  return out;
}

GroupSubset random_family_set(int t, int k, int s, std::uint64_t modulus, std::mt19937_64& rng,
                              int max_attempts) {
  if (t < 1 || k < 1 || s < 1) throw PreconditionError("t, k, s must be positive");
  if (k > t) throw PreconditionError("need k <= t");
  double equations = std::pow(2.0 * s + 1.0, k);
  for (int i = 0; i < k; ++i) equations = equations * (t - i) / (i + 1);
  if (!(static_cast<double>(modulus) > equations))
    throw PreconditionError("need N > C(t,k) (2s+1)^k");
  if (static_cast<std::uint64_t>(t) >= modulus) throw PreconditionError("need t < N");
  const GroupDescriptor g = GroupDescriptor::cyclic(modulus);
  std::uniform_int_distribution<Element> dist(0, modulus - 1);
  const FamilyParams params{k, s, 1, 1};
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Element> draw;
    draw.reserve(t);
    while (static_cast<int>(draw.size()) < t) {
      const Element x = dist(rng);
      if (std::find(draw.begin(), draw.end(), x) == draw.end()) draw.push_back(x);
    }
    GroupSubset candidate(g, std::move(draw));
    MembershipOptions opt;
    opt.throw_on_budget = true;
    if (family_membership(candidate, params, FamilyVariant::tilde, {}, opt).verdict) return candidate;
  }
  throw RetriesExhausted("no tilde-Lambda(k,s) set found within the retry cap");
}

RankDRepresentation rank_d_representation(Element target, const GroupSubset& base, int d,
                                          int l1_bound, int coeff_bound, double budget) {
  if (d < 1 || l1_bound < 0 || coeff_bound < 0) throw PreconditionError("invalid rank-d parameters");
  if (!base.group().contains(target)) throw PreconditionError("target outside the group");
  const std::size_t n = base.size();
  RankDRepresentation out{target, base, d, l1_bound, coeff_bound, false, {}, 0};
  Constraints c;
  c.coeff = std::max(coeff_bound, 1);
  c.block.assign(n, 0);
  c.block_l1 = {std::max(l1_bound, 1)};
  c.max_nonzero = static_cast<int>(std::max<std::size_t>(n, 1));
  if (count_vectors(c) > budget) throw BudgetExceeded("rank-d search space exceeds the budget");

  const GroupDescriptor& g = base.group();
  IncrementalRank rank(n);
  IntRow row(n, 0);
  // Rows of l1 norm exactly `norm`, lexicographic by position then value.
  std::function<void(std::size_t, int, Element)> visit = [&](std::size_t from, int left, Element sum) {
    if (rank.rank() >= static_cast<std::size_t>(d)) return;
    if (left == 0) {
      ++out.searched;
      if (sum == target && rank.try_add(row)) out.matrix.push_back(row);
      return;
    }
    for (std::size_t j = from; j < n; ++j) {
      for (int a = 1; a <= std::min(left, coeff_bound); ++a) {
        for (int sign : {1, -1}) {
          row[j] = sign * a;
          visit(j + 1, left - a, g.add(sum, g.scale(row[j], base.elements()[j])));
          row[j] = 0;
          if (rank.rank() >= static_cast<std::size_t>(d)) return;
        }
      }
    }
  };
  for (int norm = 0; norm <= l1_bound && rank.rank() < static_cast<std::size_t>(d); ++norm)
    visit(0, norm, 0);
  out.found = rank.rank() >= static_cast<std::size_t>(d);
  if (!out.found) out.matrix.clear();
  return out;
}

}  // namespace spectra
