#pragma once

// Large spectra, signed representation counts and additive energies.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spectra/fourier.hpp"
#include "spectra/group.hpp"

namespace spectra {

inline constexpr double kDefaultEta = 1e-9;

// R_alpha(A) = { r : |A^(r)| >= alpha |G| }, decided with tolerance eta:
// r is a member when |A^(r)| >= (alpha - eta) |G|. Frequencies with
// ||A^(r)| - alpha |G|| <= eta |G| are listed as boundary marginals.
struct LargeSpectrum {
  GroupSubset source;
  double alpha = 0;
  double delta = 0;
  double eta = kDefaultEta;
  GroupSubset members;
  std::vector<double> magnitudes;  // |A^(r)|, aligned with members.elements()
  std::vector<Element> boundary_marginals;

  // members without 0
  GroupSubset nonzero_members() const;
};

LargeSpectrum large_spectrum(const GroupSubset& set, double alpha, double eta = kDefaultEta);
// Reuses an already computed transform of `set`.
LargeSpectrum large_spectrum(const GroupSubset& set, const SpectrumTable& spectrum, double alpha,
                             double eta = kDefaultEta);

enum class TupleConvention {
  // (r_1, eps_1), ..., (r_s, eps_s) with r_i in the base, eps_i = +-1;
  // repeats allowed, order matters. Totals (2|base|)^s.
  ordered_signed,
  // s distinct base elements, each with a sign, counted once per set.
  distinct_unordered,
};

// nu_s(n) = number of representations n = sum eps_i r_i.
struct RepresentationCounts {
  GroupDescriptor group;
  std::vector<Element> base;
  int order = 0;
  TupleConvention convention = TupleConvention::ordered_signed;
  std::vector<std::pair<Element, std::uint64_t>> counts;  // sorted by element, nonzero only

  std::uint64_t at(Element n) const;
  std::uint64_t total() const;
};

RepresentationCounts representation_counts(const GroupSubset& base, int order,
                                           TupleConvention convention = TupleConvention::ordered_signed,
                                           double budget = 1e8);

enum class EnergyMethod { bruteforce, fourier };
std::string to_string(EnergyMethod method);

// T_k(B) = #{(b_1..b_k, b'_1..b'_k) in B^{2k} : b_1+..+b_k = b'_1+..+b'_k}.
struct EnergyReport {
  GroupSubset base;
  int k = 2;
  std::uint64_t t_k = 0;
  EnergyMethod method = EnergyMethod::bruteforce;
  // Distance of the Fourier-side value from the nearest integer (0 for
  // brute force).
  double integrality_residual = 0;
};

// Enumerates all |B|^k ordered k-fold sums and returns sum of squared
// multiplicities. Throws BudgetExceeded when |B|^k > budget.
EnergyReport energy_bruteforce(const GroupSubset& base, int k, double budget = 1e7);

// T_k(B) = |G|^{-1} sum_r |B^(r)|^{2k}, rounded. Throws NumericFailure when
// the value is more than 0.4 away from an integer.
EnergyReport energy_via_fourier(const GroupSubset& base, int k);

// Brute force when within budget, otherwise the Fourier identity.
EnergyReport additive_energy(const GroupSubset& base, int k);

// delta * alpha^{2k} * m^{2k} / (2^{4k} * delta^{2k}); requires
// 0 < alpha <= delta <= 1 and k >= 2.
double tmain_lower_bound(double delta, double alpha, int k, std::size_t m);

struct TmainVerdict {
  double delta = 0;
  double alpha = 0;
  int k = 2;
  std::size_t base_size = 0;
  std::uint64_t t_k = 0;
  double bound = 0;
  bool verdict = false;
  EnergyMethod method = EnergyMethod::bruteforce;
};

// Checks T_k(B) >= tmain_lower_bound(delta(A), alpha, k, |B|) for
// B subset of R_alpha(A) \ {0}. Throws PreconditionError otherwise.
TmainVerdict check_tmain(const LargeSpectrum& spectrum, const GroupSubset& base, int k);
TmainVerdict check_tmain(const GroupSubset& set, double alpha, const GroupSubset& base, int k,
                         double eta = kDefaultEta);

}  // namespace spectra
