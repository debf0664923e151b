#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spectra/dissociation.hpp"
#include "spectra/energy.hpp"
#include "spectra/reference.hpp"
#include "test_util.hpp"

using namespace spectra;

namespace {

// Independent membership oracle: every coefficient vector in [-c, c]^n.
bool family_oracle(const GroupSubset& set, int c, int l1, int max_nonzero) {
  const std::size_t n = set.size();
  IntRow row(n, -c);
  while (true) {
    int norm = 0, nonzero = 0;
    for (auto v : row) {
      norm += std::abs(static_cast<int>(v));
      nonzero += v != 0;
    }
    if (nonzero > 0 && norm <= l1 && nonzero <= max_nonzero && evaluate_row(set, row) == 0) return false;
    std::size_t i = 0;
    while (i < n && row[i] == c) row[i++] = -c;
    if (i == n) return true;
    ++row[i];
  }
}

}  // namespace

TEST_CASE("is_dissociated examples") {
  const auto z100 = GroupDescriptor::cyclic(100);
  const auto c = is_dissociated(GroupSubset(z100, {1, 2, 3}));
  CHECK_FALSE(c.verdict);
  REQUIRE(c.witness.size() == 1);
  CHECK((c.witness[0] == IntRow{1, 1, -1} || c.witness[0] == IntRow{-1, -1, 1}));
  CHECK(verify_witness(c));
  std::vector<Element> pow2;
  for (int i = 0; i < 10; ++i) pow2.push_back(Element{1} << i);
  const GroupSubset p2(GroupDescriptor::cyclic(4096), pow2);
  CHECK(is_dissociated(p2).verdict);
  CHECK(reference::dissociated_by_enumeration(p2.group(), p2.elements()));
  CHECK(is_dissociated(GroupSubset(GroupDescriptor::cyclic(7), {1, 2})).verdict);
}

TEST_CASE("is_dissociated agrees with enumeration, small and meet-in-the-middle sizes") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = GroupDescriptor::cyclic(trial % 2 ? 5003 : 1 << 20);
    const std::size_t size = 3 + trial % 6;
    const GroupSubset set = testutil::random_set(g, size, rng);
    const auto cert = is_dissociated(set);
    CHECK(cert.exhaustive);
    CHECK(cert.verdict == reference::dissociated_by_enumeration(g, set.elements()));
    CHECK(verify_witness(cert));
  }
  // 18 powers of two in Z_{2^20} are dissociated; add their sum-difference to break it
  std::vector<Element> pow2;
  for (int i = 0; i < 18; ++i) pow2.push_back(Element{1} << i);
  const auto g = GroupDescriptor::cyclic(1 << 20);
  const auto ok = is_dissociated(GroupSubset(g, pow2));
  CHECK(ok.verdict);
  CHECK(ok.exhaustive);
  pow2.push_back(3 + (1 << 17));
  const auto bad = is_dissociated(GroupSubset(g, pow2));
  CHECK_FALSE(bad.verdict);
  CHECK(verify_witness(bad));
  // cube: any repeated-sum relation x ^ y ^ (x ^ y)
  const auto c = GroupDescriptor::cube(6);
  CHECK_FALSE(is_dissociated(GroupSubset(c, {1, 2, 3})).verdict);
  CHECK(is_dissociated(GroupSubset(c, {1, 2, 4, 8})).verdict);
}

TEST_CASE("zero kills every family") {
  const auto g = GroupDescriptor::cyclic(101);
  const GroupSubset with_zero(g, {0, 3, 17});
  for (auto v : {FamilyVariant::plain, FamilyVariant::k_dissociated, FamilyVariant::Lambda_ks,
                 FamilyVariant::Lambda_k_inf, FamilyVariant::tilde}) {
    const auto cert = family_membership(with_zero, FamilyParams{2, 2, 1, 1}, v);
    CHECK_FALSE(cert.verdict);
    CHECK(verify_witness(cert));
  }
}

TEST_CASE("family membership matches the brute-force oracle") {
  std::mt19937_64 rng(43);
  const auto g = GroupDescriptor::cyclic(101);
  for (int trial = 0; trial < 30; ++trial) {
    const GroupSubset set = testutil::random_set(g, 4, rng);
    const int k = 1 + trial % 3, s = 1 + trial % 2;
    CHECK(family_membership(set, {k, s, 1, 1}, FamilyVariant::Lambda_ks).verdict ==
          family_oracle(set, std::min(s, k), k, 4));
    CHECK(family_membership(set, {k, std::nullopt, 1, 1}, FamilyVariant::Lambda_k_inf).verdict ==
          family_oracle(set, k, k, 4));
    CHECK(family_membership(set, {k, s, 1, 1}, FamilyVariant::tilde).verdict ==
          family_oracle(set, s, 4 * s, k));
    CHECK(family_membership(set, {k, s, 1, 1}, FamilyVariant::k_dissociated).verdict ==
          family_oracle(set, k, 4 * k, 4));
  }
}

TEST_CASE("family containment chain") {
  std::mt19937_64 rng(47);
  const auto g = GroupDescriptor::cyclic(101);
  for (int trial = 0; trial < 50; ++trial) {
    const GroupSubset set = testutil::random_set(g, 4, rng);
    const int k = 1 + trial % 3, s = 1 + (trial / 3) % 3;
    const bool big = family_membership(set, {k * s, s, 1, 1}, FamilyVariant::Lambda_ks).verdict;
    const bool tilde = family_membership(set, {k, s, 1, 1}, FamilyVariant::tilde).verdict;
    const bool small = family_membership(set, {k, s, 1, 1}, FamilyVariant::Lambda_ks).verdict;
    const bool inf = family_membership(set, {k, std::nullopt, 1, 1}, FamilyVariant::Lambda_k_inf).verdict;
    CHECK((!big || tilde));
    CHECK((!tilde || small));
    CHECK((!inf || small));
  }
}

TEST_CASE("partitioned family") {
  std::mt19937_64 rng(53);
  const auto g = GroupDescriptor::cyclic(1009);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSubset set = testutil::random_set(g, 6, rng);
    const int k = 1 + trial % 2, s = 2, p = 2;
    const std::vector<int> partition{0, 1, 0, 1, 0, 1};
    const bool whole = family_membership(set, {k * p, s, 1, 1}, FamilyVariant::Lambda_ks).verdict;
    const auto cert = family_membership(set, {k, s, p, 1}, FamilyVariant::partitioned, partition);
    CHECK(cert.exhaustive);
    CHECK(verify_witness(cert));
    if (whole) CHECK(cert.verdict);
  }
  const GroupSubset set(g, {1, 2, 3, 4});
  CHECK_THROWS_AS(family_membership(set, {1, 1, 2, 1}, FamilyVariant::partitioned), PreconditionError);
  CHECK_THROWS_AS(family_membership(set, {1, 1, 2, 1}, FamilyVariant::partitioned, {0, 0, 0, 1}),
                  PreconditionError);
  MembershipOptions opt;
  opt.search_partitions = true;
  const auto searched = family_membership(set, {1, 1, 2, 1}, FamilyVariant::partitioned, {}, opt);
  CHECK_FALSE(searched.exhaustive);
  CHECK(searched.partition.size() == 4);
}

TEST_CASE("rank_d family") {
  const auto g = GroupDescriptor::cyclic(101);
  const GroupSubset set(g, {1, 2, 3});
  const auto d1 = family_membership(set, {3, 2, 1, 1}, FamilyVariant::rank_d);
  CHECK_FALSE(d1.verdict);
  const auto d2 = family_membership(set, {3, 2, 1, 2}, FamilyVariant::rank_d);
  CHECK_FALSE(d2.verdict);
  CHECK(verify_witness(d2));
  CHECK(rational_rank(d2.witness) == 2);
  const auto d3 = family_membership(set, {3, 2, 1, 3}, FamilyVariant::rank_d);
  CHECK(d3.verdict);
}

TEST_CASE("budget fallback is flagged") {
  std::vector<Element> xs;
  for (Element i = 1; i <= 30; ++i) xs.push_back(i * 7919);
  const GroupSubset set(GroupDescriptor::cyclic(1000000007), xs);
  MembershipOptions opt;
  opt.budget = 1e4;
  opt.fallback_samples = 1000;
  const auto cert = family_membership(set, {3, 3, 1, 1}, FamilyVariant::Lambda_ks, {}, opt);
  CHECK_FALSE(cert.exhaustive);
  CHECK(verify_witness(cert));
  opt.throw_on_budget = true;
  CHECK_THROWS_AS(family_membership(set, {3, 3, 1, 1}, FamilyVariant::Lambda_ks, {}, opt), BudgetExceeded);
}

TEST_CASE("span") {
  const auto z10 = GroupDescriptor::cyclic(10);
  CHECK(span(GroupSubset(z10)).element_vector() == std::vector<Element>{0});
  CHECK(span(GroupSubset(z10, {1})).element_vector() == std::vector<Element>{0, 1, 9});
  std::mt19937_64 rng(59);
  const auto g = GroupDescriptor::cyclic(1000003);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSubset e = testutil::random_set(g, 1 + trial % 8, rng);
    const GroupSubset sp = span(e);
    auto sums = reference::signed_sums(g, e.elements());
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    CHECK(sp.element_vector() == sums);
    if (family_membership(e, {2, std::nullopt, 1, 1}, FamilyVariant::k_dissociated).verdict)
      CHECK(sp.size() == static_cast<std::size_t>(std::pow(3, e.size())));
  }
}

TEST_CASE("max_dissociated_subset") {
  const auto z100 = GroupDescriptor::cyclic(100);
  const auto zero = max_dissociated_subset(GroupSubset(z100, {0}));
  CHECK(zero.lambda.empty());
  CHECK(zero.covers);
  const GroupSubset r = span(GroupSubset(z100, {1, 5}));
  const auto ds = max_dissociated_subset(r);
  CHECK(ds.covers);
  CHECK(is_dissociated(ds.lambda).verdict);
  const GroupSubset sp = span(ds.lambda);
  for (Element x : r.elements()) CHECK(sp.contains(x));
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = GroupDescriptor::cyclic(997);
    const GroupSubset set = testutil::random_set(g, 12, rng);
    const auto m = max_dissociated_subset(set);
    CHECK(m.covers);
    CHECK(is_dissociated(m.lambda).verdict);
    for (Element x : set.elements()) {
      if (m.lambda.contains(x)) continue;
      std::vector<Element> more = m.lambda.element_vector();
      more.push_back(x);
      CHECK_FALSE(is_dissociated(GroupSubset(g, more)).verdict);
    }
  }
}

TEST_CASE("random_family_set") {
  std::mt19937_64 rng(67);
  const GroupSubset s = random_family_set(3, 2, 2, 1009, rng);
  CHECK(s.size() == 3);
  CHECK(family_membership(s, {2, 2, 1, 1}, FamilyVariant::tilde).verdict);
  CHECK_THROWS_AS(random_family_set(3, 2, 2, 75, rng), PreconditionError);  // C(3,2) 25 = 75
  CHECK_THROWS_AS(random_family_set(3, 4, 2, 100000, rng), PreconditionError);
}

TEST_CASE("rank_d_representation") {
  const auto g = GroupDescriptor::cyclic(101);
  const GroupSubset base(g, {3, 7, 11});
  const auto unit = rank_d_representation(7, base, 1, 3, 1);
  REQUIRE(unit.found);
  CHECK(unit.matrix == std::vector<IntRow>{{0, 1, 0}});
  const auto r10 = rank_d_representation(10, base, 1, 4, 1);
  REQUIRE(r10.found);
  CHECK(r10.matrix == std::vector<IntRow>{{1, 1, 0}});
  const auto two = rank_d_representation(14, base, 2, 4, 2);
  REQUIRE(two.found);
  CHECK(two.matrix.size() == 2);
  CHECK(rational_rank(two.matrix) == 2);
  for (const auto& row : two.matrix) {
    CHECK(evaluate_row(base, row) == 14);
    int l1 = 0;
    for (auto v : row) {
      l1 += std::abs(static_cast<int>(v));
      CHECK(std::abs(static_cast<int>(v)) <= 2);
    }
    CHECK(l1 <= 4);
  }
  const auto none = rank_d_representation(50, base, 1, 1, 1);
  CHECK_FALSE(none.found);
  CHECK(none.matrix.empty());
}

TEST_CASE("integer rank") {
  CHECK(rational_rank({{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(rational_rank({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) == 2);
  CHECK(rational_rank({{4000000000, 3, 0}, {3, 4000000000, 1}, {0, 1, 4000000000}}) == 3);
  IncrementalRank r(3);
  CHECK(r.try_add({1, 1, 0}));
  CHECK_FALSE(r.try_add({2, 2, 0}));
  CHECK(r.try_add({0, 0, 5}));
  CHECK(r.rank() == 2);
}

TEST_CASE("energy upper bound for rank-d families at desk scale") {
  // T_k(Λ) <= 2^{9k} k^k |Λ|^k (s+1)^{2d} 2^{2sk (log k)^2 / log(k^{2s} |Λ|^{s-2})}
  std::mt19937_64 rng(71);
  const auto g = GroupDescriptor::cyclic(100003);
  const int s = 3;
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const GroupSubset lam = testutil::random_set(g, 3 + trial % 4, rng);
    for (int k = 2; k <= 3; ++k)
      for (int d = 1; d <= 2; ++d) {
        MembershipOptions opt;
        opt.budget = 2e6;
        const auto cert = family_membership(lam, {2 * k, s, 1, d}, FamilyVariant::rank_d, {}, opt);
        if (!cert.verdict || !cert.exhaustive) continue;
        const double m = static_cast<double>(lam.size());
        const double lk = std::log2(k);
        const double bound = std::pow(2, 9 * k) * std::pow(k, k) * std::pow(m, k) * std::pow(s + 1, 2 * d) *
                             std::pow(2, 2 * s * k * lk * lk / std::log2(std::pow(k, 2 * s) * std::pow(m, s - 2)));
        CHECK(static_cast<double>(additive_energy(lam, k).t_k) <= bound);
        ++checked;
      }
  }
  CHECK(checked > 0);
}
