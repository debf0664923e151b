#pragma once

// Dissociated sets and the families Lambda(k,s), Lambda(k,inf),
// tilde-Lambda(k,s), Lambda(k,s,p) and Lambda_d(k,s).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spectra/group.hpp"
#include "spectra/integer_rank.hpp"

namespace spectra {

inline constexpr double kEnumerationBudget = 1e8;

enum class FamilyVariant {
  plain,          // eps in {-1,0,1}
  k_dissociated,  // |eps_i| <= k
  Lambda_ks,      // |s_i| <= s, sum |s_i| <= k
  Lambda_k_inf,   // sum |s_i| <= k
  tilde,          // |s_i| <= s, at most k nonzero s_i
  partitioned,    // per block: |s_i| <= s, sum over the block |s_i| <= k
  rank_d,         // solutions of Lambda(k,s) span a space of dimension <= d-1
};

std::string to_string(FamilyVariant v);
FamilyVariant parse_variant(const std::string& name);

struct FamilyParams {
  int k = 1;
  std::optional<int> s;  // empty means infinity
  int p = 1;
  int d = 1;
};

struct DissociationCertificate {
  GroupSubset set;
  FamilyParams params;
  FamilyVariant variant = FamilyVariant::plain;
  bool verdict = false;
  // Coefficient rows indexed like set.elements(). One row, except for
  // rank_d where d independent solutions are reported.
  std::vector<IntRow> witness;
  // Block index of each element, for the partitioned variant.
  std::vector<int> partition;
  bool exhaustive = true;
  // Coefficient vectors examined (up to sign).
  std::uint64_t enumerated = 0;
};

DissociationCertificate is_dissociated(const GroupSubset& set, double budget = kEnumerationBudget,
                                       std::uint64_t seed = 1);

struct MembershipOptions {
  double budget = kEnumerationBudget;
  std::uint64_t seed = 1;
  // Partitioned variant: try random balanced partitions when none is given.
  bool search_partitions = false;
  int partition_attempts = 64;
  // Random coefficient vectors tried once the budget is exceeded.
  std::uint64_t fallback_samples = 1000000;
  bool throw_on_budget = false;
};

DissociationCertificate family_membership(const GroupSubset& set, const FamilyParams& params,
                                          FamilyVariant variant,
                                          const std::vector<int>& partition = {},
                                          const MembershipOptions& options = {});

// Re-evaluates a false certificate: every witness row is nonzero, sums to 0
// and respects the family constraints; rank_d witnesses must have rank d.
// Returns true for certificates with a true verdict.
bool verify_witness(const DissociationCertificate& cert);

// { sum eps_i e_i : eps in {-1,0,1}^|E| }.
GroupSubset span(const GroupSubset& set, double budget = kEnumerationBudget);

struct DissociatedSubset {
  GroupSubset lambda;
  std::size_t span_size = 0;
  // Every element of R lies in Span(lambda); equivalent to maximality.
  bool covers = false;
};

// Greedy scan of R in ascending order, keeping x whenever x is not in the
// span of the elements kept so far.
DissociatedSubset max_dissociated_subset(const GroupSubset& set);

// t distinct residues of Z_N forming a tilde-Lambda(k,s) set.
GroupSubset random_family_set(int t, int k, int s, std::uint64_t modulus, std::mt19937_64& rng,
                              int max_attempts = 1000);

struct RankDRepresentation {
  Element target = 0;
  GroupSubset base;
  int d = 1;
  int row_l1_bound = 0;
  int coeff_bound = 0;
  bool found = false;
  std::vector<IntRow> matrix;
  std::uint64_t searched = 0;
};

// Searches rows m with |m_j| <= coeff_bound, sum |m_j| <= l1_bound and
// sum m_j b_j = r, in order of increasing l1 norm, and returns the first d
// rows of full rank.
RankDRepresentation rank_d_representation(Element target, const GroupSubset& base, int d,
                                          int l1_bound, int coeff_bound,
                                          double budget = kEnumerationBudget);

// sum_j row_j * elements_j in the group of `set`.
Element evaluate_row(const GroupSubset& set, const IntRow& row);

}  // namespace spectra
