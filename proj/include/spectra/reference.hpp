#pragma once

// Serial, definition-level implementations kept as test oracles and as the
// baseline for the benchmark. Nothing here is used by the library itself.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "spectra/group.hpp"

namespace spectra::reference {

// sum_n f(n) exp(+2*pi*i*n*r/N) for every r, O(N^2).
std::vector<std::complex<double>> dft_direct(std::span<const double> f);

// sum_x (-1)^{popcount(r & x)} f(x) for every r, O(4^n).
std::vector<double> wht_direct(std::span<const double> f);

// Counts ordered 2k-tuples (b_1..b_k, b'_1..b'_k) in B^{2k} with equal sums
// by visiting every tuple. Throws BudgetExceeded past 5e7 tuples.
std::uint64_t energy_by_tuples(const GroupSubset& base, int k);

// Every sum sum_i eps_i e_i with eps in {-1,0,1}^|E|, with multiplicity.
std::vector<Element> signed_sums(const GroupDescriptor& group, std::span<const Element> generators);

// True when no nonzero eps in {-1,0,1}^|D| gives sum eps_i d_i = 0.
bool dissociated_by_enumeration(const GroupDescriptor& group, std::span<const Element> set);

}  // namespace spectra::reference
