#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "spectra/energy.hpp"
#include "spectra/reference.hpp"
#include "test_util.hpp"

using namespace spectra;

TEST_CASE("large spectrum of a cube subspace") {
  const auto c = GroupDescriptor::cube(3);
  const GroupSubset half(c, {0b000, 0b010, 0b100, 0b110});
  const LargeSpectrum ls = large_spectrum(half, 0.4);
  CHECK(ls.members.element_vector() == std::vector<Element>{0, 1});
  CHECK(ls.magnitudes == std::vector<double>{4, 4});
  CHECK(ls.delta == 0.5);
}

TEST_CASE("large spectrum membership against the direct DFT") {
  std::mt19937_64 rng(101);
  const auto g = GroupDescriptor::cyclic(101);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupSubset a = testutil::random_set(g, 20, rng);
    const LargeSpectrum ls = large_spectrum(a, 0.1);
    const auto oracle = reference::dft_direct(a.indicator());
    for (Element r = 0; r < 101; ++r) {
      const double m = std::abs(oracle[r]);
      if (std::fabs(m - 10.1) < 1e-6) continue;
      CHECK(ls.members.contains(r) == (m >= 10.1));
    }
    CHECK(ls.members.size() <= 19);
  }
}

TEST_CASE("large spectrum invariants") {
  std::mt19937_64 rng(7);
  for (const auto& g : {GroupDescriptor::cyclic(256), GroupDescriptor::cyclic(997), GroupDescriptor::cube(9)}) {
    for (double density : {0.1, 0.3, 0.5}) {
      const GroupSubset a = testutil::random_set_density(g, density, rng);
      for (double alpha : {0.02, 0.05, 0.1}) {
        if (alpha > a.density()) continue;
        const LargeSpectrum ls = large_spectrum(a, alpha);
        CHECK(ls.members.contains(0));
        CHECK(ls.members.is_symmetric());
        CHECK(ls.members.size() <= static_cast<std::size_t>(std::floor(a.density() / (alpha * alpha) + 1e-9)));
        for (double m : ls.magnitudes) CHECK(m >= (alpha - ls.eta) * static_cast<double>(g.order()));
      }
    }
  }
}

TEST_CASE("boundary marginals are reported") {
  // Z_2^3 subspace: |A^(e1)| = 4 = 0.5 * 8 sits on the threshold.
  const auto c = GroupDescriptor::cube(3);
  const GroupSubset half(c, {0b000, 0b010, 0b100, 0b110});
  const LargeSpectrum ls = large_spectrum(half, 0.5);
  CHECK(ls.boundary_marginals == std::vector<Element>{0, 1});
  CHECK(ls.members.size() == 2);
  CHECK_THROWS_AS(large_spectrum(half, 0.0), PreconditionError);
}

TEST_CASE("representation counts") {
  const auto z10 = GroupDescriptor::cyclic(10);
  const auto one = representation_counts(GroupSubset(z10, {1}), 1);
  CHECK(one.at(1) == 1);
  CHECK(one.at(9) == 1);
  CHECK(one.counts.size() == 2);
  const auto z100 = GroupDescriptor::cyclic(100);
  const GroupSubset lam(z100, {1, 2});
  const auto two = representation_counts(lam, 2);
  CHECK(two.at(3) == 2);
  CHECK(two.total() == 16);  // (2|Λ|)^s
  // brute-force oracle under the ordered convention
  std::map<Element, std::uint64_t> oracle;
  const std::vector<std::int64_t> signed_base{1, -1, 2, -2};
  for (auto a : signed_base)
    for (auto b : signed_base) ++oracle[z100.scale(a + b, 1)];
  for (const auto& [n, c] : oracle) CHECK(two.at(n) == c);
}

TEST_CASE("distinct convention: nu_i(n) <= 1 on 2-dissociated sets") {
  const auto g = GroupDescriptor::cyclic(100003);
  const GroupSubset lam(g, {1, 5, 25, 125, 625});  // powers of 5: 2-dissociated
  for (int s = 1; s <= 5; ++s) {
    const auto counts = representation_counts(lam, s, TupleConvention::distinct_unordered);
    for (const auto& [n, c] : counts.counts) CHECK(c <= 1);
    const auto ordered = representation_counts(lam, s);
    CHECK(ordered.total() == static_cast<std::uint64_t>(std::pow(10, s)));
  }
}

TEST_CASE("energy examples") {
  const auto g = GroupDescriptor::cyclic(50);
  for (int k = 2; k <= 4; ++k) {
    CHECK(energy_bruteforce(GroupSubset(g, {7}), k).t_k == 1);
    CHECK(energy_via_fourier(GroupSubset(g, {7}), k).t_k == 1);
  }
  const auto full = GroupSubset::whole(GroupDescriptor::cyclic(12));
  CHECK(energy_via_fourier(full, 2).t_k == 12 * 12 * 12);
  CHECK(energy_bruteforce(full, 3).t_k == 248832);  // 12^5
  // subgroup of Z_2^n of size m: T_k = m^{2k-1}
  const auto c = GroupDescriptor::cube(8);
  std::vector<Element> sub;
  for (Element x = 0; x < 16; ++x) sub.push_back(x << 2);
  const GroupSubset subgroup(c, sub);
  CHECK(energy_bruteforce(subgroup, 2).t_k == 4096);
  CHECK(energy_via_fourier(subgroup, 3).t_k == 1048576);
}

TEST_CASE("brute force and Fourier energies agree with the tuple oracle") {
  std::mt19937_64 rng(23);
  for (const auto& g : {GroupDescriptor::cyclic(101), GroupDescriptor::cube(10)}) {
    for (std::size_t size : {5u, 8u, 12u}) {
      const GroupSubset b = testutil::random_set(g, size, rng);
      for (int k : {2, 3}) {
        const auto bf = energy_bruteforce(b, k);
        const auto fo = energy_via_fourier(b, k);
        CHECK(bf.t_k == fo.t_k);
        CHECK(fo.integrality_residual < 0.4);
        if (size <= 8) CHECK(bf.t_k == reference::energy_by_tuples(b, k));
      }
    }
  }
  const GroupSubset b30 = testutil::random_set(GroupDescriptor::cube(10), 30, rng);
  CHECK(energy_bruteforce(b30, 2).t_k == energy_via_fourier(b30, 2).t_k);
}

TEST_CASE("energy bounds and monotonicity") {
  std::mt19937_64 rng(29);
  const auto g = GroupDescriptor::cyclic(211);
  for (int trial = 0; trial < 10; ++trial) {
    const GroupSubset big = testutil::random_set(g, 15, rng);
    std::vector<Element> part(big.elements().begin(), big.elements().begin() + 9);
    const GroupSubset small(g, part);
    for (int k : {2, 3}) {
      const auto tb = additive_energy(big, k).t_k;
      const auto ts = additive_energy(small, k).t_k;
      CHECK(ts <= tb);
      CHECK(tb >= static_cast<std::uint64_t>(std::pow(15, k)));
      CHECK(tb <= static_cast<std::uint64_t>(std::pow(15, 2 * k - 1)));
    }
  }
}

TEST_CASE("energy budget") {
  const GroupSubset b = GroupSubset::whole(GroupDescriptor::cyclic(400));
  CHECK_THROWS_AS(energy_bruteforce(b, 3), BudgetExceeded);
  CHECK(additive_energy(b, 3).method == EnergyMethod::fourier);
  CHECK(additive_energy(b, 3).t_k == 400ull * 400 * 400 * 400 * 400);
}

TEST_CASE("tmain lower bound arithmetic") {
  CHECK(tmain_lower_bound(0.3, 0.3, 2, 4) == doctest::Approx(0.3));
  CHECK(tmain_lower_bound(0.25, 0.125, 2, 2) == doctest::Approx(1.0 / 1024));
  // exact rational oracle: delta = 3/8, alpha = 1/8, k = 3, m = 10
  // (3/8) (10/3)^6 / 2^12 = 10^6 / (2^3 * 2^12 * 3^5)
  CHECK(tmain_lower_bound(0.375, 0.125, 3, 10) == doctest::Approx(1e6 / (8.0 * 4096.0 * 243.0)).epsilon(1e-14));
  CHECK_THROWS_AS(tmain_lower_bound(0.1, 0.2, 2, 3), PreconditionError);
  CHECK_THROWS_AS(tmain_lower_bound(0.2, 0.1, 1, 3), PreconditionError);
}

TEST_CASE("check_tmain") {
  std::mt19937_64 rng(31);
  const auto g = GroupDescriptor::cyclic(512);
  const GroupSubset a = testutil::random_set(g, 128, rng);
  const LargeSpectrum ls = large_spectrum(a, 0.05);
  const TmainVerdict empty = check_tmain(ls, GroupSubset(g), 2);
  CHECK(empty.verdict);
  CHECK(empty.bound == 0);
  for (int k : {2, 3}) {
    const TmainVerdict v = check_tmain(ls, ls.nonzero_members(), k);
    CHECK(v.verdict);
    CHECK(static_cast<double>(v.t_k) >= v.bound);
  }
  CHECK_THROWS_AS(check_tmain(ls, GroupSubset(g, {0}), 2), PreconditionError);
  Element outside = 1;
  while (ls.members.contains(outside)) ++outside;
  CHECK_THROWS_AS(check_tmain(ls, GroupSubset(g, {outside}), 2), PreconditionError);
}
