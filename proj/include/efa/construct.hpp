#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efa/core.hpp"

namespace efa {

// Componentwise sum on pairs, defined iff both coordinates are. Element
// (x, y) is named "x|y"; pairs are ordered with the left factor outermost.
EffectAlgebra direct_product(const EffectAlgebra& e, const EffectAlgebra& f);

// Disjoint union with the two zeros and the two ones identified; sums never
// cross summands. Both inputs need at least two elements. Name collisions on
// the right summand are resolved by appending "~2" until unique.
EffectAlgebra horizontal_sum(const EffectAlgebra& e, const EffectAlgebra& f);

// The interval [0, a] with a as the new unit: x (+) y defined iff it is
// defined in e and lands inside the interval. Requires a != zero.
EffectAlgebra interval_algebra(const EffectAlgebra& e, ElementId a);

// Facts a catalog entry is expected to satisfy; recomputed in tests.
// Unset fields are unchecked. For parametric entries the facts describe the
// algebra at the default parameter.
struct ExpectedFacts {
    std::optional<int> size;
    std::optional<bool> orthoalgebra;
    std::optional<bool> lattice;
    std::optional<bool> mv;
    std::optional<bool> homogeneous;
    std::optional<bool> rdp;
    std::optional<int> block_count;
};

struct CatalogEntry {
    std::string name;
    bool takes_param = false;
    int default_param = 0;
    std::string summary;
    std::function<EffectAlgebra(int)> builder;  // ignores its argument unless takes_param
    ExpectedFacts expected;
};

// Named examples and parametric families. Fixed tables (r6, l18, gen18) are
// frozen entry lists; "wright" is computed as sharp_subalgebra(gen18) rather
// than typed in.
const std::vector<CatalogEntry>& catalog_entries();

// Build a catalog algebra by name. Omitted param means the entry's default.
// Unknown name, a param for a fixed entry, or an out-of-range param raise
// std::invalid_argument.
EffectAlgebra catalog(const std::string& name, std::optional<int> param = std::nullopt);

// One labeled instance per catalog entry (parametric families at a small
// spread of parameters); the corpus the verification sweep builds on.
std::vector<std::pair<std::string, EffectAlgebra>> catalog_all();

// Every effect algebra with 2..max_n elements, one representative per
// isomorphism class, in a deterministic order. Backtracks over partial sum
// tables with a fixed zero/one, canonical complement shapes, and lex-minimal
// pruning under the shape's stabilizer. visit returns false to stop early.
// max_n above the cap (8) raises std::invalid_argument.
void enumerate_all(int max_n, const std::function<bool(const EffectAlgebra&)>& visit);
std::vector<EffectAlgebra> enumerate_all(int max_n);

inline constexpr int kEnumerationCap = 8;

}  // namespace efa
