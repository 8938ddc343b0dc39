#include "naive_oracles.hpp"

#include <array>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace naive {

using efa::bit;
using efa::EffectAlgebra;
using efa::ElementId;
using efa::ElemSet;
using efa::has;
using efa::kUndef;

namespace {

// Subset sums stay defined along the way: every partial subset sum s of an
// orthogonal family satisfies s <= total, so total (+) x defined gives
// s (+) x defined.
bool cover_rec(const EffectAlgebra& e, ElemSet m, ElemSet within, ElementId min_id,
               ElementId total, ElemSet sums) {
    if ((m & ~sums) == 0) return true;
    for (ElementId x = min_id; x < (ElementId)e.size(); ++x) {
        if (!has(within, x) || x == e.zero()) continue;
        auto t2 = e.sum(total, x);
        if (!t2) continue;
        ElemSet sums2 = sums;
        for (ElementId s : efa::members(sums)) sums2 |= bit(*e.sum(s, x));
        if (cover_rec(e, m, within, x, *t2, sums2)) return true;
    }
    return false;
}

std::uint64_t count_rec(const EffectAlgebra& e, ElemSet within, ElementId min_id,
                        ElementId total, int left) {
    if (left == 0) return 0;
    std::uint64_t n = 0;
    for (ElementId x = min_id; x < (ElementId)e.size(); ++x) {
        if (!has(within, x) || x == e.zero()) continue;
        auto t2 = e.sum(total, x);
        if (!t2) continue;
        n += 1 + count_rec(e, within, x, *t2, left - 1);
    }
    return n;
}

// Order recomputed from the raw table, bypassing the precomputed leq.
bool leq_raw(const EffectAlgebra& e, ElementId a, ElementId b) {
    for (ElementId c = 0; c < (ElementId)e.size(); ++c)
        if (e.sum_raw(a, c) == b) return true;
    return false;
}

int height_rec(const EffectAlgebra& e, ElementId a, std::vector<int>& memo) {
    if (memo[a] >= 0) return memo[a];
    int best = 0;
    for (ElementId b = 0; b < (ElementId)e.size(); ++b)
        if (b != a && leq_raw(e, a, b)) best = std::max(best, 1 + height_rec(e, b, memo));
    return memo[a] = best;
}

// All involutions of {0..m-1} as complement maps on middle elements.
void involutions(int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    int i = 0;
    while (i < m && cur[i] >= 0) ++i;
    if (i == m) {
        out.push_back(cur);
        return;
    }
    cur[i] = i;
    involutions(m, cur, out);
    for (int j = i + 1; j < m; ++j) {
        if (cur[j] >= 0) continue;
        cur[i] = j;
        cur[j] = i;
        involutions(m, cur, out);
        cur[j] = -1;
    }
    cur[i] = -1;
}

using Coord = std::array<int, 3>;

Coord add(Coord a, Coord b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

bool within_bound(Coord a, Coord bound) {
    return a[0] <= bound[0] && a[1] <= bound[1] && a[2] <= bound[2];
}

// One MV block given by coordinates: x (+) y defined iff the componentwise
// sum stays under the bound.
struct CoordBlock {
    std::map<std::string, Coord> coord;
    Coord bound;

    std::optional<std::string> sum(const std::map<Coord, std::string>& names,
                                   const std::string& x, const std::string& y) const {
        auto ix = coord.find(x), iy = coord.find(y);
        if (ix == coord.end() || iy == coord.end()) return std::nullopt;
        Coord s = add(ix->second, iy->second);
        if (!within_bound(s, bound)) return std::nullopt;
        return names.at(s);
    }
};

CoordBlock make_block(const std::map<Coord, std::string>& names, Coord bound) {
    CoordBlock b;
    b.bound = bound;
    for (const auto& [c, n] : names) b.coord[n] = c;
    return b;
}

// One Boolean block given by atom subsets: x (+) y defined iff disjoint.
struct SetBlock {
    std::map<std::string, unsigned> mask;
    std::map<unsigned, std::string> name;

    std::optional<std::string> sum(const std::string& x, const std::string& y) const {
        auto ix = mask.find(x), iy = mask.find(y);
        if (ix == mask.end() || iy == mask.end()) return std::nullopt;
        if (ix->second & iy->second) return std::nullopt;
        return name.at(ix->second | iy->second);
    }
};

SetBlock make_set_block(const std::map<unsigned, std::string>& by_mask) {
    SetBlock b;
    b.name = by_mask;
    for (const auto& [m, n] : by_mask) b.mask[n] = m;
    return b;
}

EffectAlgebra paste(const std::vector<std::string>& names,
                    const std::function<std::vector<std::string>(const std::string&,
                                                                 const std::string&)>& sums) {
    std::vector<std::array<std::string, 3>> entries;
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i; j < names.size(); ++j) {
            if (names[i] == "0" || names[j] == "0") continue;
            std::vector<std::string> got = sums(names[i], names[j]);
            if (got.empty()) continue;
            for (const auto& g : got)  // overlapping blocks must agree on shared sums
                if (g != got.front()) throw std::logic_error("paste: blocks disagree");
            entries.push_back({names[i], names[j], got.front()});
        }
    }
    auto br = EffectAlgebra::build(names, "0", "1", entries);
    if (!br.ok()) throw std::logic_error("paste: " + br.violations[0].message);
    return *br.algebra;
}

}  // namespace

bool cover_exists(const EffectAlgebra& e, ElemSet m, ElemSet within) {
    return cover_rec(e, m, within, 0, e.zero(), bit(e.zero()));
}

ElemSet closure_of(const EffectAlgebra& e, ElemSet m) {
    ElemSet s = m;
    bool grew = true;
    while (grew) {
        grew = false;
        for (ElementId y : efa::members(s)) {
            ElementId yc = e.complement(y);
            for (ElementId x = 0; x < (ElementId)e.size(); ++x) {
                if (!e.leq(x, y) || !e.leq(x, yc)) continue;
                ElemSet add_x = bit(x) | bit(e.ominus(y, x));
                if ((add_x & ~s) != 0) {
                    s |= add_x;
                    grew = true;
                }
            }
        }
    }
    return s;
}

std::uint64_t family_count(const EffectAlgebra& e, ElemSet within, int max_len) {
    return count_rec(e, within, 0, e.zero(), max_len < 0 ? e.size() : max_len);
}

int height(const EffectAlgebra& e) {
    std::vector<int> memo(e.size(), -1);
    return height_rec(e, e.zero(), memo);
}

std::vector<std::pair<ElementId, ElementId>> cover_pairs(const EffectAlgebra& e) {
    int n = (int)e.size();
    std::vector<std::pair<ElementId, ElementId>> out;
    for (ElementId a = 0; a < n; ++a) {
        for (ElementId b = 0; b < n; ++b) {
            if (a == b || !leq_raw(e, a, b)) continue;
            bool strict_between = false;
            for (ElementId z = 0; z < n && !strict_between; ++z)
                if (z != a && z != b && leq_raw(e, a, z) && leq_raw(e, z, b))
                    strict_between = true;
            if (!strict_between) out.emplace_back(a, b);
        }
    }
    return out;
}

std::vector<EffectAlgebra> enumerate_small(int max_n) {
    if (max_n > 6) throw std::invalid_argument("enumerate_small: max_n must be <= 6");
    std::vector<EffectAlgebra> reps;
    for (int n = 2; n <= max_n; ++n) {
        int m = n - 2;
        std::vector<std::string> names = {"0"};
        for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
        names.push_back("1");

        std::vector<std::vector<int>> comps;
        std::vector<int> cur(m, -1);
        involutions(m, cur, comps);

        for (const auto& comp : comps) {
            // Free cells: unordered middle pairs that are not complement pairs.
            // Complement cells are forced to 1; 0 and 1 rows are implicit.
            struct Cell {
                int i, j;
                std::vector<int> values;  // kUndef or another middle
            };
            std::vector<Cell> cells;
            for (int i = 0; i < m; ++i) {
                for (int j = i; j < m; ++j) {
                    if (comp[i] == j) continue;
                    Cell c{i, j, {kUndef}};
                    for (int v = 0; v < m; ++v)
                        if (v != i && v != j) c.values.push_back(v);
                    cells.push_back(c);
                }
            }
            std::vector<std::size_t> pick(cells.size(), 0);
            for (;;) {
                std::vector<std::array<std::string, 3>> entries;
                for (int i = 0; i < m; ++i)
                    if (i <= comp[i]) entries.push_back({names[i + 1], names[comp[i] + 1], "1"});
                for (std::size_t k = 0; k < cells.size(); ++k) {
                    int v = cells[k].values[pick[k]];
                    if (v != kUndef)
                        entries.push_back(
                            {names[cells[k].i + 1], names[cells[k].j + 1], names[v + 1]});
                }
                auto br = EffectAlgebra::build(names, "0", "1", entries);
                if (br.ok()) {
                    bool fresh = true;
                    for (const auto& r : reps) {
                        if ((int)r.size() != n) continue;
                        if (find_isomorphism(r, *br.algebra)) {
                            fresh = false;
                            break;
                        }
                    }
                    if (fresh) reps.push_back(*br.algebra);
                }
                std::size_t k = 0;
                while (k < cells.size() && ++pick[k] == cells[k].values.size()) pick[k++] = 0;
                if (k == cells.size()) break;
            }
        }
    }
    return reps;
}

EffectAlgebra build_l18() {
    // Two 12-element MV blocks sharing {0, c, c+c, (c+c)', c', 1}, described
    // in independent coordinate systems and pasted along their union.
    std::map<Coord, std::string> a_names = {
        {{0, 0, 0}, "0"},      {{1, 0, 0}, "a"},   {{0, 1, 0}, "b"},
        {{0, 0, 1}, "c"},      {{1, 0, 1}, "a+c"}, {{0, 1, 1}, "b+c"},
        {{0, 0, 2}, "c+c"},    {{0, 1, 2}, "a'"},  {{1, 0, 2}, "b'"},
        {{1, 1, 0}, "(c+c)'"}, {{1, 1, 1}, "c'"},  {{1, 1, 2}, "1"},
    };
    std::map<Coord, std::string> b_names = {
        {{0, 0, 0}, "0"},      {{1, 0, 0}, "c"},   {{0, 1, 0}, "d"},
        {{0, 0, 1}, "e"},      {{2, 0, 0}, "c+c"}, {{1, 1, 0}, "c+d"},
        {{1, 0, 1}, "c+e"},    {{2, 0, 1}, "d'"},  {{2, 1, 0}, "e'"},
        {{0, 1, 1}, "(c+c)'"}, {{1, 1, 1}, "c'"},  {{2, 1, 1}, "1"},
    };
    CoordBlock ba = make_block(a_names, {1, 1, 2});
    CoordBlock bb = make_block(b_names, {2, 1, 1});
    std::vector<std::string> names = {"0",   "a",      "b",  "c",  "d",  "e",
                                      "a+c", "b+c",    "c+c", "c+d", "c+e", "(c+c)'",
                                      "a'",  "b'",     "c'", "d'", "e'", "1"};
    return paste(names, [&](const std::string& x, const std::string& y) {
        std::vector<std::string> got;
        if (auto s = ba.sum(a_names, x, y)) got.push_back(*s);
        if (auto s = bb.sum(b_names, x, y)) got.push_back(*s);
        return got;
    });
}

EffectAlgebra build_gen18() {
    // Two Boolean 8-element blocks and one 12-element MV block pasted along
    // shared elements; the three block sums must agree wherever they overlap.
    SetBlock b1 = make_set_block({
        // atoms a=1, b=2, c=4
        {0u, "0"}, {1u, "a"}, {2u, "b"}, {4u, "c"},
        {6u, "a'"}, {5u, "b'"}, {3u, "c'"}, {7u, "1"},
    });
    SetBlock b2 = make_set_block({
        // atoms e=1, f=2, a=4
        {0u, "0"}, {1u, "e"}, {2u, "f"}, {4u, "a"},
        {6u, "e'"}, {5u, "f'"}, {3u, "a'"}, {7u, "1"},
    });
    std::map<Coord, std::string> b3_names = {
        {{0, 0, 0}, "0"},   {{1, 0, 0}, "c"},       {{0, 1, 0}, "d"},
        {{0, 0, 1}, "e"},   {{0, 2, 0}, "d+d"},     {{0, 1, 1}, "d+e"},
        {{1, 1, 0}, "c+d"}, {{1, 0, 1}, "(d+d)'"},  {{0, 2, 1}, "c'"},
        {{1, 1, 1}, "d'"},  {{1, 2, 0}, "e'"},      {{1, 2, 1}, "1"},
    };
    CoordBlock b3 = make_block(b3_names, {1, 2, 1});
    std::vector<std::string> names = {"0",       "a",  "b",  "c",  "d",  "e",
                                      "f",       "c+d", "d+d", "d+e", "(d+d)'", "a'",
                                      "b'",      "c'", "d'", "e'", "f'", "1"};
    return paste(names, [&](const std::string& x, const std::string& y) {
        std::vector<std::string> got;
        if (auto s = b1.sum(x, y)) got.push_back(*s);
        if (auto s = b2.sum(x, y)) got.push_back(*s);
        if (auto s = b3.sum(b3_names, x, y)) got.push_back(*s);
        return got;
    });
}

}  // namespace naive
