#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arrfree/arrangement.hpp"
#include "arrfree/lattice.hpp"
#include "arrfree/multiarrangement.hpp"
#include "arrfree/polynomial.hpp"

namespace arrfree {

/// One justification step of a freeness certificate. `rule` is one of
/// Saito | Rank2 | Yoshinaga3 | Division | Inductive | Axiom-l<=2.
struct CertStep {
  std::string rule;
  nlohmann::json data;
  std::vector<CertStep> children;
};

enum class FreeStatus { Free, NotFree, Unknown };

struct FreenessVerdict {
  FreeStatus status = FreeStatus::Unknown;
  std::vector<int> exponents;  // sorted ascending; present when Free
  CertStep certificate;        // when Free
  nlohmann::json witness;      // when NotFree
  std::string reason;          // when Unknown

  bool is_free() const { return status == FreeStatus::Free; }
};

nlohmann::json verdict_to_json(const FreenessVerdict& v);

/// Independent re-verification of a Free verdict's certificate tree, every
/// step recomputed from its inputs.
bool replay_verdict(const Arrangement& a, const FreenessVerdict& v, std::string* why = nullptr);

/// The multiset of nonnegative integer roots of chi(A;t) when it splits
/// completely (divisor search on constant terms of successive deflations);
/// nullopt otherwise. nullopt certifies NotFree by Terao factorization.
std::optional<std::vector<int>> terao_necessary(const Arrangement& a);

/// Completes two of {exp(A), exp(A'), exp(A'')} to the third under the
/// addition-deletion shape (shared d_1..d_{l-1}, last entry offset by one).
struct AdditionDeletionTriple {
  std::vector<int> full;        // exp(A)
  std::vector<int> deleted;     // exp(A')
  std::vector<int> restricted;  // exp(A'')
};
std::optional<AdditionDeletionTriple> addition_deletion_infer(
    std::optional<std::vector<int>> full, std::optional<std::vector<int>> deleted,
    std::optional<std::vector<int>> restricted);

/// b2(A) >= b2(A^H) + |A^H| (|A| - |A^H|); the inequality always holds and is
/// asserted, equality is reported.
struct B2Equality {
  bool holds = false;
  Int lhs;
  Int rhs;
};
B2Equality b2_equality(const Arrangement& a, std::uint32_t h);

/// Witness for a failed deletion criterion: a flat of A^H (in H-coordinates)
/// plus diagnostic data.
struct CriterionResult {
  bool ok = true;
  std::optional<Flat> witness;
  nlohmann::json detail;
};

/// Deletion criterion: chi(A^H_X) divides chi(A_X) at every flat X of
/// L(A^H) with codim >= 2 inside H (center included). `include_center =
/// false` switches to the alternate range that stops short of the full
/// ambient codimension, for empirical comparison. Requires a Free verdict
/// for A.
CriterionResult deletable(const Arrangement& a, std::uint32_t h, const FreenessVerdict& freeness,
                          bool include_center = true);

/// Equivalent local form: b2-equality for H in A_X and |A_X| - |A^H_X| a
/// root of chi(A_X), at every X in L(A^H). Must agree with deletable.
CriterionResult local_b2_criterion(const Arrangement& a, std::uint32_t h,
                                   const FreenessVerdict& freeness);

/// Division theorem recursion: Free when some H has the b2-equality,
/// chi(A^H) | chi(A) and a recursively free restriction; Unknown otherwise.
/// Never returns NotFree.
FreenessVerdict division_free(const Arrangement& a);

/// Complete freeness test for essential rank 3 via the Ziegler restriction:
/// free iff b2^0(A) equals the rank-2 multiarrangement b2.
FreenessVerdict yoshinaga3_free(const Arrangement& a);

/// Strategy pipeline: Terao factorization filter, rank <= 2 axiom, rank-3
/// test, division theorem, Saito search within the degree budget
/// (budget < 0 means "up to the largest Terao root").
FreenessVerdict decide_freeness(const Arrangement& a, int budget = -1);

/// Verdict for A \ {H} justified by the deletion theorem: requires a Free
/// verdict for A and a passing deletion criterion; exponents follow the
/// addition-deletion pattern and the certificate step is "Inductive".
FreenessVerdict deletion_verdict(const Arrangement& a, std::uint32_t h,
                                 const FreenessVerdict& freeness);

/// Depth-first search for a chain A = A_n > ... > A_0 = empty with every
/// step passing the deletion criterion; memoized on surviving index sets.
struct FiltrationResult {
  std::optional<std::vector<std::uint32_t>> chain;  // deletion order, original indices
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
};
FiltrationResult free_filtration(const Arrangement& a, const FreenessVerdict& freeness);

}  // namespace arrfree
