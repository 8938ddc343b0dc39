#include "efa/structure.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace efa {

namespace {

// True when some u1 <= v1 in s with u (-) u1 in s and <= v2 exists.
bool decomposes(const EffectAlgebra& e, ElemSet s, ElementId u, ElementId v1, ElementId v2) {
    for (ElementId u1 : members(e.down(u) & e.down(v1) & s)) {
        ElementId u2 = e.ominus(u, u1);
        if (has(s, u2) && e.leq(u2, v2)) return true;
    }
    return false;
}

PropertyCheck decomposition_scan(const EffectAlgebra& e, ElemSet s, bool homogeneous_only) {
    for (ElementId u : members(s))
        for (ElementId v1 : members(s))
            for (ElementId v2 : members(s)) {
                auto sum = e.sum(v1, v2);
                if (!sum || !e.leq(u, *sum)) continue;
                if (homogeneous_only && !e.leq(u, e.complement(*sum))) continue;
                if (!decomposes(e, s, u, v1, v2)) return {false, {u, v1, v2}};
            }
    return {};
}

}  // namespace

PropertyCheck has_rdp(const EffectAlgebra& e) { return decomposition_scan(e, e.carrier(), false); }

PropertyCheck has_rdp_within(const EffectAlgebra& e, ElemSet s) {
    return decomposition_scan(e, s, false);
}

PropertyCheck is_homogeneous(const EffectAlgebra& e) {
    return decomposition_scan(e, e.carrier(), true);
}

bool is_homogeneous_via_blocks(const EffectAlgebra& e) {
    auto bs = blocks_rdp_maximal(e);
    bool ok = true;
    // Zero members never obstruct a decomposition, so nonzero 3-member
    // canonical families are the only configurations that matter.
    enumerate_families(e, e.carrier(), 3, [&](const OrthogonalFamily& f) {
        if (f.members.size() != 3) return true;
        ElemSet mem = 0;
        for (ElementId x : f.members) mem |= bit(x);
        for (ElemSet b : bs)
            if ((mem & ~b) == 0) return true;
        ok = false;
        return false;
    });
    return ok;
}

std::optional<std::vector<ElementId>> n_ary_decompose(const EffectAlgebra& e, ElementId u,
                                                      const std::vector<ElementId>& family) {
    auto total = family_sum(e, family);
    if (!total) throw std::invalid_argument("family is not orthogonal");
    if (u < 0 || u >= e.size() || !e.leq(u, *total) || !e.leq(u, e.complement(*total)))
        throw std::invalid_argument("need u <= total and u <= total'");

    std::vector<ElementId> parts;
    auto dfs = [&](auto&& self, size_t i, ElementId rem) -> bool {
        if (i == family.size()) return rem == e.zero();
        for (ElementId ui : members(e.down(family[i]) & e.down(rem))) {
            parts.push_back(ui);
            if (self(self, i + 1, e.ominus(rem, ui))) return true;
            parts.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, 0, u)) return std::nullopt;
    return parts;
}

ElemSet generated_subalgebra(const EffectAlgebra& e, ElemSet seed) {
    if ((seed & ~e.carrier()) != 0)
        throw std::invalid_argument("seed contains ids out of range");
    ElemSet s = seed | bit(e.one());
    bool grew = true;
    while (grew) {
        grew = false;
        for (ElementId b : members(s))
            for (ElementId a : members(e.down(b) & s)) {
                ElementId d = e.ominus(b, a);
                if (!has(s, d)) {
                    s |= bit(d);
                    grew = true;
                }
            }
    }
    return s;
}

std::vector<ElemSet> list_subalgebras(const EffectAlgebra& e) {
    std::set<ElemSet> seen;
    std::vector<ElemSet> work{generated_subalgebra(e, 0)};
    seen.insert(work[0]);
    while (!work.empty()) {
        ElemSet s = work.back();
        work.pop_back();
        for (ElementId x : members(e.carrier() & ~s)) {
            ElemSet t = generated_subalgebra(e, s | bit(x));
            if (seen.insert(t).second) work.push_back(t);
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

std::vector<ElemSet> keep_maximal(std::vector<ElemSet> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<ElemSet> out;
    for (ElemSet s : sets) {
        bool dominated = false;
        for (ElemSet t : sets)
            if (s != t && (s & ~t) == 0) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<ElemSet> blocks_rdp_maximal(const EffectAlgebra& e) {
    if (has_rdp(e)) return {e.carrier()};
    std::vector<ElemSet> rdp_subs;
    for (ElemSet s : list_subalgebras(e))
        if (has_rdp_within(e, s)) rdp_subs.push_back(s);
    return keep_maximal(std::move(rdp_subs));
}

std::vector<ElemSet> maximal_internally_compatible(const EffectAlgebra& e) {
    std::vector<ElemSet> ranges;
    if (e.size() == 1) return {e.carrier()};
    enumerate_families(e, e.carrier(), -1, [&](const OrthogonalFamily& f) {
        if (f.total != e.one()) return true;
        ElemSet sums = bit(e.zero());
        for (ElementId x : f.members) {
            ElemSet next = sums;
            for (ElementId s : members(sums)) next |= bit(*e.sum(s, x));
            sums = next;
        }
        ranges.push_back(sums);
        return true;
    });
    return keep_maximal(std::move(ranges));
}

BlockSet blocks(const EffectAlgebra& e) {
    BlockSet out;
    out.method = BlockMethod::RdpMaximal;
    out.blocks = blocks_rdp_maximal(e);
    if (is_homogeneous(e) && maximal_internally_compatible(e) != out.blocks)
        throw std::logic_error("block characterizations disagree on a homogeneous algebra");
    return out;
}

ElemSet sharp_elements(const EffectAlgebra& e) {
    ElemSet out = 0;
    for (ElementId a : members(e.carrier()))
        if ((e.down(a) & e.down(e.complement(a))) == bit(e.zero())) out |= bit(a);
    return out;
}

ElemSet principal_elements(const EffectAlgebra& e) {
    ElemSet out = 0;
    for (ElementId a : members(e.carrier())) {
        bool ok = true;
        auto below = members(e.down(a));
        for (ElementId x : below) {
            for (ElementId y : below) {
                auto s = e.sum(x, y);
                if (s && !e.leq(*s, a)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) out |= bit(a);
    }
    return out;
}

ElemSet central_elements(const EffectAlgebra& e) {
    ElemSet out = 0;
    for (ElementId a : members(principal_elements(e))) {
        ElementId ac = e.complement(a);
        bool ok = true;
        for (ElementId b : members(e.carrier())) {
            int count = 0;
            for (ElementId b1 : members(e.down(a) & e.down(b)))
                if (e.leq(e.ominus(b, b1), ac)) ++count;
            if (count != 1) {
                ok = false;
                break;
            }
        }
        if (ok) out |= bit(a);
    }
    return out;
}

EffectAlgebra restrict_to(const EffectAlgebra& e, ElemSet s) {
    if (!is_sub_effect_algebra(e, s))
        throw std::invalid_argument("restriction target is not a sub-effect algebra");
    std::vector<std::string> names;
    for (ElementId a : members(s)) names.push_back(e.name(a));
    std::vector<std::array<std::string, 3>> entries;
    for (ElementId a : members(s)) {
        if (a == e.zero()) continue;
        for (ElementId b : members(s)) {
            if (b < a || b == e.zero()) continue;
            auto v = e.sum(a, b);
            if (v) entries.push_back({e.name(a), e.name(b), e.name(*v)});
        }
    }
    auto br = EffectAlgebra::build(names, e.name(e.zero()), e.name(e.one()), entries);
    if (!br.ok()) throw std::logic_error("restriction of a sub-effect algebra failed to validate");
    return *br.algebra;
}

EffectAlgebra sharp_subalgebra(const EffectAlgebra& e) {
    ElemSet s = sharp_elements(e);
    for (ElementId b : members(s))
        for (ElementId a : members(e.down(b) & s))
            if (!has(s, e.ominus(b, a)))
                throw SharpClosureError(a, b,
                                        "sharp elements not closed under difference: (" +
                                            e.name(b) + " - " + e.name(a) + ") is unsharp");
    return restrict_to(e, s);
}

ElemSet compatibility_center(const EffectAlgebra& e) {
    ElemSet k = e.carrier();
    for (ElemSet b : blocks(e).blocks) k &= b;
    return k;
}

bool is_ideal(const EffectAlgebra& e, ElemSet i) {
    if ((i & ~e.carrier()) != 0) throw std::invalid_argument("ideal contains ids out of range");
    if (!has(i, e.zero())) throw std::invalid_argument("an ideal must contain zero");
    auto xs = members(i);
    for (ElementId a : xs)
        for (ElementId b : xs) {
            auto s = e.sum(a, b);
            if (s && !has(i, *s)) return false;
        }
    for (ElementId c : xs)
        if ((e.down(c) & ~i) != 0) return false;
    return true;
}

bool is_riesz_ideal(const EffectAlgebra& e, ElemSet i) {
    if (!is_ideal(e, i)) return false;
    for (ElementId x : members(i))
        for (ElementId a : members(e.carrier()))
            for (ElementId b : members(e.carrier())) {
                auto s = e.sum(a, b);
                if (!s || !e.leq(x, *s)) continue;
                bool split = false;
                for (ElementId i1 : members(i & e.down(a))) {
                    for (ElementId i2 : members(i & e.down(b))) {
                        auto t = e.sum(i1, i2);
                        if (t && e.leq(x, *t)) {
                            split = true;
                            break;
                        }
                    }
                    if (split) break;
                }
                if (!split) return false;
            }
    return true;
}

BlockCentrality central_in_block(const EffectAlgebra& e, ElementId a) {
    if (a < 0 || a >= e.size()) throw std::invalid_argument("element id out of range");
    BlockCentrality out;
    for (ElemSet b : blocks(e).blocks) {
        if (!has(b, a)) continue;
        EffectAlgebra sub = restrict_to(e, b);
        ElementId local = popcount(b & (bit(a) - 1));
        if (has(central_elements(sub), local))
            out.in_some = true;
        else
            out.in_every_containing = false;
    }
    return out;
}

ClassificationReport classification_report(const EffectAlgebra& e) {
    ClassificationReport r;
    r.flags = classify(e);
    r.rdp = has_rdp(e);
    r.homogeneous = is_homogeneous(e);
    r.block_set = blocks(e);
    r.sharp = sharp_elements(e);
    r.principal = principal_elements(e);
    r.central = central_elements(e);
    r.k_center = e.carrier();
    for (ElemSet b : r.block_set.blocks) r.k_center &= b;
    r.height = chain_height(e);
    return r;
}

}  // namespace efa
