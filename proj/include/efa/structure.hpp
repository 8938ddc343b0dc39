#ifndef EFA_STRUCTURE_HPP
#define EFA_STRUCTURE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "efa/core.hpp"
#include "efa/families.hpp"

namespace efa {

// Lex-least triple (u, v1, v2) violating a decomposition property.
struct RdpWitness {
    ElementId u = kUndef, v1 = kUndef, v2 = kUndef;
};

struct PropertyCheck {
    bool holds = true;
    RdpWitness witness;  // meaningful only when !holds
    explicit operator bool() const { return holds; }
};

// Riesz decomposition: whenever u <= v1 (+) v2, u splits as u1 (+) u2 with
// u1 <= v1, u2 <= v2. Two summands suffice; wider sums follow by induction.
PropertyCheck has_rdp(const EffectAlgebra& e);
// The same scan with u, v1, v2 and the decomposition parts restricted to s.
// For a sub-effect algebra the order and differences agree with e's, so no
// restricted table is needed.
PropertyCheck has_rdp_within(const EffectAlgebra& e, ElemSet s);
// Decomposition demanded only under the extra constraint u <= (v1 (+) v2)'.
PropertyCheck is_homogeneous(const EffectAlgebra& e);
// Equivalent criterion, decided through the block list: the member set of
// every orthogonal family with three members lies inside one block.
bool is_homogeneous_via_blocks(const EffectAlgebra& e);

// Lex-least u1..uk with ui <= family[i] and (+)ui = u; nullopt when no such
// decomposition exists (possible only in non-homogeneous algebras).
// Preconditions: family orthogonal, u <= total and u <= total'; violations
// throw invalid_argument.
std::optional<std::vector<ElementId>> n_ary_decompose(const EffectAlgebra& e, ElementId u,
                                                      const std::vector<ElementId>& family);

// Least superset of seed containing 1 and closed under (-) of comparable
// pairs. Closure under (+) and ' follows.
ElemSet generated_subalgebra(const EffectAlgebra& e, ElemSet seed);
// Every sub-effect algebra, ascending as masks.
std::vector<ElemSet> list_subalgebras(const EffectAlgebra& e);

enum class BlockMethod { RdpMaximal, InternallyCompatibleMaximal };

struct BlockSet {
    std::vector<ElemSet> blocks;  // ascending as masks
    BlockMethod method = BlockMethod::RdpMaximal;
};

// Maximal sub-effect algebras satisfying RDP.
std::vector<ElemSet> blocks_rdp_maximal(const EffectAlgebra& e);
// Maximal internally compatible subsets; each contains 1. Computed as the
// maximal subset-sum sets of orthogonal families summing to 1.
std::vector<ElemSet> maximal_internally_compatible(const EffectAlgebra& e);
// Blocks by the RDP route; on homogeneous input the internal-compatibility
// route is recomputed and must agree (logic_error otherwise).
BlockSet blocks(const EffectAlgebra& e);

ElemSet sharp_elements(const EffectAlgebra& e);      // down(a) ∩ down(a') = {0}
ElemSet principal_elements(const EffectAlgebra& e);  // [0,a] closed under (+)
// Principal a such that every b decomposes uniquely as b1 (+) b2 with
// b1 <= a, b2 <= a'.
ElemSet central_elements(const EffectAlgebra& e);

// Restriction of e to s (must be a sub-effect algebra); ids remapped to
// ascending order, names kept.
EffectAlgebra restrict_to(const EffectAlgebra& e, ElemSet s);

class SharpClosureError : public std::runtime_error {
  public:
    SharpClosureError(ElementId a, ElementId b, const std::string& msg)
        : std::runtime_error(msg), a(a), b(b) {}
    ElementId a, b;  // a <= b sharp with b (-) a not sharp
};

// Restriction to the sharp elements; throws SharpClosureError when they are
// not closed under (-) (never observed on homogeneous input).
EffectAlgebra sharp_subalgebra(const EffectAlgebra& e);

// K(E): intersection of all blocks.
ElemSet compatibility_center(const EffectAlgebra& e);

// i must contain zero (invalid_argument otherwise). Ideal: closed under
// defined sums and downward closed.
bool is_ideal(const EffectAlgebra& e, ElemSet i);
// Riesz ideal: ideal such that i <= a (+) b splits along a and b into parts
// from the ideal: i1, i2 in I, i1 <= a, i2 <= b, i <= i1 (+) i2.
bool is_riesz_ideal(const EffectAlgebra& e, ElemSet i);

struct BlockCentrality {
    bool in_some = false;
    bool in_every_containing = true;  // vacuous when no block contains a
};

// Centrality of a inside each block containing it, each taken as an algebra
// in its own right.
BlockCentrality central_in_block(const EffectAlgebra& e, ElementId a);

struct ClassificationReport {
    ClassifyResult flags;
    PropertyCheck homogeneous, rdp;
    BlockSet block_set;
    // The sharp set doubles as the carrier of the sharp restriction.
    ElemSet sharp = 0, principal = 0, central = 0, k_center = 0;
    int height = 0;
};

ClassificationReport classification_report(const EffectAlgebra& e);

}  // namespace efa

#endif
