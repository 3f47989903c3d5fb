#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dispbox {

/// d subsets of the ground set {0,...,ground_size-1}. sets[j] is F_j.
struct SetFamily {
  int ground_size = 0;
  std::vector<std::vector<int>> sets;

  int d() const { return static_cast<int>(sets.size()); }
  void validate() const;  // throws usage_error on bad indices / empty family
};

/// Minimum number of other family members whose union contains F_j.
/// nullopt means uncoverable (some element of F_j lies in no other set).
struct CoverResult {
  std::optional<int> number;
  std::vector<int> witness;  // optimal covering index set A (empty when number==0 or uncoverable)
};

// Exact minimum cover of F_j by other members, by branch-and-bound on the
// elements of F_j: branch on the least-covered element, candidates ordered by
// uncovered coverage (index tie-break), greedy upper bound, disjoint-element
// packing lower bound. Deterministic.
CoverResult cover_number(const SetFamily& fam, int j);

// Direct recheck used for refutation soundness: F_j subset of union of F_i, i in A.
bool union_covers(const SetFamily& fam, int j, const std::vector<int>& a);

struct CoverFreeCertificate {
  int r = 0;
  bool certified = false;
  // Present iff refuted: the minimal-cardinality refuting pair (j, A).
  std::optional<int> refuting_j;
  std::vector<int> refuting_cover;
  std::vector<CoverResult> per_j;  // exact cover numbers, index j
};

// Certified iff min_j cover_number(fam, j) > r. The family is r-cover-free
// exactly when no member is contained in the union of r others.
CoverFreeCertificate certify_cover_free(const SetFamily& fam, int r, int workers = 0);

// Ground-set lower bound for r-cover-free families of d sets (Alon-Asodi):
// (1/10) * r^2 * log(d - r/2) / log(r). The ratio of logarithms is
// base-invariant; natural logarithms are used. Requires 2 <= r <= 2*sqrt(d)
// and d - r/2 > 1.
double alon_asodi_bound(int d, int r);

}  // namespace dispbox
