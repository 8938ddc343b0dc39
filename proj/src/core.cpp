#include "efa/core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "efa/families.hpp"

namespace efa {

std::vector<ElementId> members(ElemSet s) {
    std::vector<ElementId> out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

int popcount(ElemSet s) { return std::popcount(s); }

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::E1: return "E1";
        case Axiom::E2: return "E2";
        case Axiom::E3: return "E3";
        case Axiom::E4: return "E4";
        case Axiom::Zero: return "Zero";
        case Axiom::Table: return "Table";
    }
    return "?";
}

std::optional<ElementId> EffectAlgebra::id_of(const std::string& name) const {
    auto it = id_by_name_.find(name);
    if (it == id_by_name_.end()) return std::nullopt;
    return it->second;
}

ElementId EffectAlgebra::ominus(ElementId b, ElementId a) const {
    ElementId c = diff_[idx(b, a)];
    if (c == kUndef)
        throw std::invalid_argument("ominus: " + names_[a] + " is not below " + names_[b]);
    return c;
}

std::optional<ElementId> EffectAlgebra::meet(ElementId a, ElementId b) const {
    ElemSet lb = down_[a] & down_[b];
    for (ElementId g : members(lb))
        if ((lb & ~down_[g]) == 0) return g;
    return std::nullopt;
}

std::optional<ElementId> EffectAlgebra::join(ElementId a, ElementId b) const {
    ElemSet ub = up_[a] & up_[b];
    for (ElementId g : members(ub))
        if ((ub & ~up_[g]) == 0) return g;
    return std::nullopt;
}

void EffectAlgebra::derive_caches() {
    diff_.assign(n_ * n_, kUndef);
    for (ElementId a = 0; a < n_; ++a)
        for (ElementId c = 0; c < n_; ++c) {
            ElementId b = sum_[idx(a, c)];
            if (b != kUndef) diff_[idx(b, a)] = c;  // unique by cancellativity
        }
    comp_.assign(n_, kUndef);
    for (ElementId a = 0; a < n_; ++a) comp_[a] = diff_[idx(one_, a)];
    down_.assign(n_, 0);
    up_.assign(n_, 0);
    for (ElementId a = 0; a < n_; ++a)
        for (ElementId b = 0; b < n_; ++b)
            if (leq(a, b)) {
                down_[b] |= bit(a);
                up_[a] |= bit(b);
            }
}

BuildResult EffectAlgebra::build(const std::vector<std::string>& names,
                                 const std::string& zero_name, const std::string& one_name,
                                 const std::vector<std::array<std::string, 3>>& entries) {
    BuildResult res;
    auto table_err = [&](const std::string& msg, std::vector<ElementId> w = {}) {
        res.violations.push_back({Axiom::Table, std::move(w), msg});
    };

    int n = static_cast<int>(names.size());
    if (n == 0) {
        table_err("empty carrier");
        return res;
    }
    if (n > 64) {
        table_err("carriers above 64 elements are unsupported");
        return res;
    }
    std::unordered_map<std::string, ElementId> ids;
    for (int i = 0; i < n; ++i) {
        if (names[i].empty()) table_err("empty element name", {i});
        if (!ids.emplace(names[i], i).second) table_err("duplicate element name " + names[i], {i});
    }
    auto zit = ids.find(zero_name), oit = ids.find(one_name);
    if (zit == ids.end()) table_err("unknown zero element " + zero_name);
    if (oit == ids.end()) table_err("unknown one element " + one_name);
    if (!res.violations.empty()) return res;

    EffectAlgebra e;
    e.n_ = n;
    e.names_ = names;
    e.id_by_name_ = ids;
    e.zero_ = zit->second;
    e.one_ = oit->second;
    e.sum_.assign(n * n, kUndef);

    // zero rows are forced: 0 (+) x = x
    for (ElementId x = 0; x < n; ++x) {
        e.sum_[e.idx(e.zero_, x)] = x;
        e.sum_[e.idx(x, e.zero_)] = x;
    }
    for (const auto& ent : entries) {
        ElementId v[3];
        bool known = true;
        for (int k = 0; k < 3; ++k) {
            auto it = ids.find(ent[k]);
            if (it == ids.end()) {
                table_err("entry references unknown name " + ent[k]);
                known = false;
                break;
            }
            v[k] = it->second;
        }
        if (!known) continue;
        ElementId prev = e.sum_[e.idx(v[0], v[1])];
        if (prev != kUndef && prev != v[2]) {
            table_err("conflicting entries for " + ent[0] + " " + ent[1], {v[0], v[1]});
            continue;
        }
        e.sum_[e.idx(v[0], v[1])] = v[2];
        e.sum_[e.idx(v[1], v[0])] = v[2];
    }
    if (!res.violations.empty()) return res;

    // Zero: neutral element (entries may only have restated the forced rows).
    for (ElementId x = 0; x < n; ++x)
        if (e.sum_[e.idx(e.zero_, x)] != x)
            res.violations.push_back({Axiom::Zero, {x}, "zero is not neutral at " + names[x]});

    // E4: a (+) 1 defined forces a = 0.
    for (ElementId a = 0; a < n; ++a)
        if (a != e.zero_ && e.sum_[e.idx(a, e.one_)] != kUndef)
            res.violations.push_back(
                {Axiom::E4, {a}, names[a] + " (+) " + one_name + " is defined"});

    // E3: exactly one complement.
    for (ElementId a = 0; a < n; ++a) {
        std::vector<ElementId> comps;
        for (ElementId b = 0; b < n; ++b)
            if (e.sum_[e.idx(a, b)] == e.one_) comps.push_back(b);
        if (comps.empty())
            res.violations.push_back({Axiom::E3, {a}, names[a] + " has no complement"});
        else if (comps.size() > 1)
            res.violations.push_back({Axiom::E3,
                                      {a, comps[0], comps[1]},
                                      names[a] + " has multiple complements"});
    }

    // E2: exhaustive associativity over all triples.
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            ElementId ab = e.sum_[e.idx(a, b)];
            if (ab == kUndef) continue;
            for (ElementId c = 0; c < n; ++c) {
                ElementId abc = e.sum_[e.idx(ab, c)];
                if (abc == kUndef) continue;
                ElementId bc = e.sum_[e.idx(b, c)];
                if (bc == kUndef || e.sum_[e.idx(a, bc)] != abc)
                    res.violations.push_back({Axiom::E2,
                                              {a, b, c},
                                              "associativity fails at " + names[a] + "," +
                                                  names[b] + "," + names[c]});
            }
        }

    // Cancellativity is a consequence of E1-E4 on finite tables; if it fails
    // here with no axiom violation recorded above, the validator is broken.
    bool cancel_ok = true;
    for (ElementId a = 0; a < n && cancel_ok; ++a) {
        ElemSet seen = 0;
        for (ElementId b = 0; b < n; ++b) {
            ElementId v = e.sum_[e.idx(a, b)];
            if (v == kUndef) continue;
            if (has(seen, v)) cancel_ok = false;
            seen |= bit(v);
        }
    }
    if (!cancel_ok && res.violations.empty())
        throw std::logic_error("cancellativity failed without an axiom violation");

    if (!res.violations.empty()) return res;

    e.derive_caches();
    // comp is an involution and perp(a,b) <=> a <= b'; both follow from the
    // axioms, so a failure here is a cache bug.
    for (ElementId a = 0; a < n; ++a) {
        if (e.comp_[a] == kUndef || e.comp_[e.comp_[a]] != a)
            throw std::logic_error("complement cache is not an involution");
        for (ElementId b = 0; b < n; ++b)
            if (e.defined(a, b) != e.leq(a, e.comp_[b]))
                throw std::logic_error("perp/leq cross-check failed");
    }
    res.algebra = std::move(e);
    return res;
}

ClassifyResult classify(const EffectAlgebra& e) {
    ClassifyResult r;
    const ElementId z = e.zero();

    r.orthoalgebra.value = true;
    for (ElementId a = 0; a < e.size() && r.orthoalgebra.value; ++a)
        if (a != z && e.defined(a, a)) {
            r.orthoalgebra = {false, {a}, "a (+) a defined"};
        }

    // OMP: pairwise-orthogonal triples are jointly summable.
    r.omp.value = true;
    for (ElementId a = 0; a < e.size() && r.omp.value; ++a)
        for (ElementId b = 0; b < e.size() && r.omp.value; ++b) {
            if (!e.defined(a, b)) continue;
            ElementId ab = *e.sum(a, b);
            for (ElementId c = 0; c < e.size() && r.omp.value; ++c)
                if (e.defined(b, c) && e.defined(c, a) && !e.defined(ab, c))
                    r.omp = {false, {a, b, c}, "no joint sum"};
        }

    r.lattice.value = true;
    for (ElementId a = 0; a < e.size() && r.lattice.value; ++a)
        for (ElementId b = a; b < e.size() && r.lattice.value; ++b) {
            if (!e.meet(a, b))
                r.lattice = {false, {a, b}, "meet"};
            else if (!e.join(a, b))
                r.lattice = {false, {a, b}, "join"};
        }

    r.compatible = is_compatible_set(e, e.carrier()).has_value();

    if (!r.lattice.value)
        r.mv = {false, r.lattice.witness, "not lattice ordered (" + r.lattice.detail + ")"};
    else if (!r.compatible)
        r.mv = {false, {}, "carrier has no orthogonal cover"};
    else
        r.mv.value = true;

    if (!r.mv.value)
        r.boolean_alg = {false, r.mv.witness, "not an MV-algebra"};
    else if (!r.orthoalgebra.value)
        r.boolean_alg = {false, r.orthoalgebra.witness, "not an orthoalgebra"};
    else
        r.boolean_alg.value = true;
    return r;
}

bool is_sub_effect_algebra(const EffectAlgebra& e, ElemSet s) {
    if (!has(s, e.one())) return false;
    for (ElementId a : members(s))
        for (ElementId b : members(s))
            if (e.leq(b, a) && !has(s, e.ominus_raw(a, b))) return false;
    // Closure under (+) and ' follows (a (+) b = (a' (-) b)'); a failure
    // would mean the difference scan above is wrong.
    for (ElementId a : members(s)) {
        if (!has(s, e.complement(a)))
            throw std::logic_error("ominus-closed set not complement-closed");
        for (ElementId b : members(s))
            if (e.defined(a, b) && !has(s, *e.sum(a, b)))
                throw std::logic_error("ominus-closed set not sum-closed");
    }
    return true;
}

namespace {

// Cheap iso invariants; mismatched vectors can never correspond.
struct ElemInvariant {
    int down, up, degree;
    bool self;
    bool operator==(const ElemInvariant&) const = default;
};

ElemInvariant invariant(const EffectAlgebra& e, ElementId a) {
    int deg = 0;
    for (ElementId b = 0; b < e.size(); ++b)
        if (e.defined(a, b)) ++deg;
    return {popcount(e.down(a)), popcount(e.up(a)), deg, e.defined(a, a)};
}

bool extend_iso(const EffectAlgebra& e, const EffectAlgebra& f, std::vector<ElementId>& map,
                std::vector<bool>& used, ElementId next,
                const std::vector<std::vector<ElementId>>& cand) {
    int n = e.size();
    if (next == n) {
        for (ElementId a = 0; a < n; ++a)
            for (ElementId b = 0; b < n; ++b) {
                auto s = e.sum(a, b);
                auto t = f.sum(map[a], map[b]);
                if (s.has_value() != t.has_value()) return false;
                if (s && map[*s] != *t) return false;
            }
        return true;
    }
    for (ElementId img : cand[next]) {
        if (used[img]) continue;
        map[next] = img;
        used[img] = true;
        // definedness must agree on every pair of assigned elements; sums whose
        // value is already assigned must map consistently (rest deferred to leaf)
        bool ok = true;
        for (ElementId p = 0; p <= next && ok; ++p) {
            ElementId s = e.sum_raw(p, next);
            ElementId t = f.sum_raw(map[p], img);
            if ((s == kUndef) != (t == kUndef))
                ok = false;
            else if (s != kUndef && s <= next && map[s] != t)
                ok = false;
        }
        if (ok && extend_iso(e, f, map, used, next + 1, cand)) return true;
        used[img] = false;
        map[next] = kUndef;
    }
    return false;
}

}  // namespace

std::optional<std::vector<ElementId>> find_isomorphism(const EffectAlgebra& e,
                                                       const EffectAlgebra& f) {
    if (e.size() != f.size()) return std::nullopt;
    int n = e.size();
    std::vector<std::vector<ElementId>> cand(n);
    for (ElementId a = 0; a < n; ++a) {
        ElemInvariant ia = invariant(e, a);
        for (ElementId b = 0; b < n; ++b) {
            if ((a == e.zero()) != (b == f.zero())) continue;
            if ((a == e.one()) != (b == f.one())) continue;
            if (ia == invariant(f, b)) cand[a].push_back(b);  // ascending -> lex-least map
        }
        if (cand[a].empty()) return std::nullopt;
    }
    std::vector<ElementId> map(n, kUndef);
    std::vector<bool> used(n, false);
    if (extend_iso(e, f, map, used, 0, cand)) return map;
    return std::nullopt;
}

}  // namespace efa
