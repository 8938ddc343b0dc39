#ifndef EFA_FAMILIES_HPP
#define EFA_FAMILIES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "efa/core.hpp"

namespace efa {

// Finite sequence whose iterated sum is defined. Canonical form (as produced
// by enumerate_families): nonzero members in nondecreasing id order.
struct OrthogonalFamily {
    std::vector<ElementId> members;
    ElementId total = kUndef;
};

// Left fold of (+); nullopt as soon as a step is undefined. Empty -> zero.
std::optional<ElementId> family_sum(const EffectAlgebra& e,
                                    const std::vector<ElementId>& members);

// Number of strict steps on the longest chain 0 < ... < 1. Canonical families
// never have more members: partial sums rise strictly by cancellativity.
int chain_height(const EffectAlgebra& e);

// partition[i] lists the fine indices that must sum to coarse.members[i];
// the blocks must be disjoint and cover every fine index.
bool is_refinement(const EffectAlgebra& e, const OrthogonalFamily& fine,
                   const OrthogonalFamily& coarse,
                   const std::vector<std::vector<int>>& partition);

// Every canonical family over `within` with at most max_len members, in DFS
// preorder (lexicographic by member sequence). Return false to stop early.
// max_len < 0 means chain_height(e).
void enumerate_families(const EffectAlgebra& e, ElemSet within, int max_len,
                        const std::function<bool(const OrthogonalFamily&)>& visit);
std::uint64_t count_families(const EffectAlgebra& e, ElemSet within, int max_len = -1);

struct CoverCertificate {
    OrthogonalFamily family;
    // covered element -> indices into family.members whose sum re-creates it
    std::map<ElementId, std::vector<int>> assignment;
    ElemSet range_within = 0;  // constraint the members were drawn from
};

// Re-checks every assignment by summation and members within range_within.
bool verify_cover(const EffectAlgebra& e, ElemSet m, const CoverCertificate& cert);

class BudgetExceeded : public std::runtime_error {
  public:
    explicit BudgetExceeded(std::uint64_t budget)
        : std::runtime_error("search budget exceeded (" + std::to_string(budget) + " nodes)"),
          budget(budget) {}
    std::uint64_t budget;
};

constexpr std::uint64_t kDefaultBudget = 50'000'000;

// First-found certificate under canonical family order, or nullopt when no
// orthogonal cover of m with members drawn from `within` exists.
std::optional<CoverCertificate> find_cover(const EffectAlgebra& e, ElemSet m, ElemSet within,
                                           std::uint64_t budget = kDefaultBudget);

std::optional<CoverCertificate> is_compatible_set(const EffectAlgebra& e, ElemSet m,
                                                  std::uint64_t budget = kDefaultBudget);
std::optional<CoverCertificate> is_internally_compatible(const EffectAlgebra& e, ElemSet m,
                                                         std::uint64_t budget = kDefaultBudget);

struct MutualWitness {
    ElementId a1, b1, c;
};

// a = a1 (+) c, b = b1 (+) c with a1 (+) b1 (+) c defined; lex-least triple.
std::optional<MutualWitness> mutually_compatible(const EffectAlgebra& e, ElementId a,
                                                 ElementId b);
bool is_mutually_compatible_set(const EffectAlgebra& e, ElemSet m);

// Least fixpoint of adding x and y (-) x whenever x <= y and x <= y' for some
// y already in the set. Extensive, monotone, idempotent.
ElemSet closure(const EffectAlgebra& e, ElemSet m);

}  // namespace efa

#endif
