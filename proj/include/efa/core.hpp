#ifndef EFA_CORE_HPP
#define EFA_CORE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace efa {

using ElementId = int;
constexpr ElementId kUndef = -1;

// Element subsets as bitmasks; carriers are capped at 64 elements.
using ElemSet = std::uint64_t;

constexpr ElemSet bit(ElementId a) { return ElemSet{1} << a; }
constexpr bool has(ElemSet s, ElementId a) { return (s >> a) & 1; }

std::vector<ElementId> members(ElemSet s);
int popcount(ElemSet s);

enum class Axiom { E1, E2, E3, E4, Zero, Table };

const char* axiom_name(Axiom a);

struct AxiomViolation {
    Axiom axiom;
    std::vector<ElementId> witness;  // up to 3 ids; may be empty for table-shape errors
    std::string message;
};

struct BuildResult;

// Immutable finite effect algebra: carrier 0..n-1, partial sum table,
// designated zero/one, derived order/complement/difference caches.
class EffectAlgebra {
  public:
    // Validates every axiom exhaustively; entries give each unordered pair at
    // most once (conflicting duplicates are a Table violation), zero rows are
    // implicit. On any violation no algebra is returned.
    static BuildResult build(const std::vector<std::string>& names,
                             const std::string& zero_name,
                             const std::string& one_name,
                             const std::vector<std::array<std::string, 3>>& entries);

    int size() const { return n_; }
    ElementId zero() const { return zero_; }
    ElementId one() const { return one_; }
    ElemSet carrier() const { return n_ == 64 ? ~ElemSet{0} : (ElemSet{1} << n_) - 1; }

    const std::string& name(ElementId a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<ElementId> id_of(const std::string& name) const;

    bool defined(ElementId a, ElementId b) const { return sum_[idx(a, b)] != kUndef; }
    // a (+) b, or nullopt when undefined.
    std::optional<ElementId> sum(ElementId a, ElementId b) const {
        ElementId v = sum_[idx(a, b)];
        if (v == kUndef) return std::nullopt;
        return v;
    }
    ElementId sum_raw(ElementId a, ElementId b) const { return sum_[idx(a, b)]; }

    // a <= b iff some c has a (+) c = b.
    bool leq(ElementId a, ElementId b) const { return diff_[idx(b, a)] != kUndef; }
    ElementId complement(ElementId a) const { return comp_[a]; }
    // b (-) a: the unique c with a (+) c = b; throws when !leq(a,b).
    ElementId ominus(ElementId b, ElementId a) const;
    ElementId ominus_raw(ElementId b, ElementId a) const { return diff_[idx(b, a)]; }
    // a (+) b defined; equivalent to leq(a, complement(b)).
    bool perp(ElementId a, ElementId b) const { return defined(a, b); }

    ElemSet down(ElementId a) const { return down_[a]; }
    ElemSet up(ElementId a) const { return up_[a]; }

    std::optional<ElementId> meet(ElementId a, ElementId b) const;
    std::optional<ElementId> join(ElementId a, ElementId b) const;

  private:
    EffectAlgebra() = default;
    int idx(ElementId a, ElementId b) const { return a * n_ + b; }
    void derive_caches();

    int n_ = 0;
    ElementId zero_ = 0, one_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, ElementId> id_by_name_;
    std::vector<ElementId> sum_;   // n*n, kUndef for undefined
    std::vector<ElementId> diff_;  // diff_[b*n+a] = b (-) a, kUndef when !(a<=b)
    std::vector<ElementId> comp_;
    std::vector<ElemSet> down_, up_;
};

struct BuildResult {
    std::optional<EffectAlgebra> algebra;
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

// One classification flag with a counterexample when false. Witness layout:
// orthoalgebra {a}; omp {a,b,c}; lattice {a,b} with detail "meet"/"join";
// mv/boolean inherit the failing sub-property's witness, detail names it.
struct ClassFlag {
    bool value = false;
    std::vector<ElementId> witness;
    std::string detail;
};

struct ClassifyResult {
    ClassFlag orthoalgebra, omp, lattice, mv, boolean_alg;
    bool compatible = false;  // carrier has an orthogonal cover
};

ClassifyResult classify(const EffectAlgebra& e);

// 1 in S and S closed under (-) of comparable pairs.
bool is_sub_effect_algebra(const EffectAlgebra& e, ElemSet s);

// Lexicographically least bijection preserving 0, 1 and (+) both ways.
std::optional<std::vector<ElementId>> find_isomorphism(const EffectAlgebra& e,
                                                       const EffectAlgebra& f);

}  // namespace efa

#endif
