#include "efa/families.hpp"

#include <algorithm>
#include <bit>

namespace efa {

namespace {

void check_id(const EffectAlgebra& e, ElementId x) {
    if (x < 0 || x >= e.size()) throw std::invalid_argument("element id out of range");
}

}  // namespace

std::optional<ElementId> family_sum(const EffectAlgebra& e,
                                    const std::vector<ElementId>& members) {
    ElementId acc = e.zero();
    for (ElementId x : members) {
        check_id(e, x);
        auto next = e.sum(acc, x);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

int chain_height(const EffectAlgebra& e) {
    std::vector<int> memo(static_cast<size_t>(e.size()), -1);
    auto longest = [&](auto&& self, ElementId x) -> int {
        if (x == e.one()) return 0;
        int& slot = memo[static_cast<size_t>(x)];
        if (slot >= 0) return slot;
        int best = 0;
        for (ElementId y : members(e.up(x))) {
            if (y == x) continue;
            best = std::max(best, 1 + self(self, y));
        }
        return slot = best;
    };
    return longest(longest, e.zero());
}

bool is_refinement(const EffectAlgebra& e, const OrthogonalFamily& fine,
                   const OrthogonalFamily& coarse,
                   const std::vector<std::vector<int>>& partition) {
    auto ft = family_sum(e, fine.members);
    auto ct = family_sum(e, coarse.members);
    if (!ft || !ct || *ft != *ct) return false;
    if (fine.total != kUndef && fine.total != *ft) return false;
    if (coarse.total != kUndef && coarse.total != *ct) return false;
    if (partition.size() != coarse.members.size()) return false;

    std::vector<char> seen(fine.members.size(), 0);
    for (size_t i = 0; i < partition.size(); ++i) {
        std::vector<ElementId> block;
        for (int idx : partition[i]) {
            if (idx < 0 || static_cast<size_t>(idx) >= fine.members.size()) return false;
            if (seen[static_cast<size_t>(idx)]) return false;
            seen[static_cast<size_t>(idx)] = 1;
            block.push_back(fine.members[static_cast<size_t>(idx)]);
        }
        auto bs = family_sum(e, block);
        if (!bs || *bs != coarse.members[i]) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

void enumerate_families(const EffectAlgebra& e, ElemSet within, int max_len,
                        const std::function<bool(const OrthogonalFamily&)>& visit) {
    if ((within & ~e.carrier()) != 0)
        throw std::invalid_argument("member set contains ids out of range");
    if (max_len < 0) max_len = chain_height(e);
    OrthogonalFamily fam;
    // Nondecreasing nonzero members keep exactly one representative per
    // multiset; prefix sums rise strictly, so depth never exceeds the height.
    auto dfs = [&](auto&& self, ElementId least, ElementId total) -> bool {
        if (static_cast<int>(fam.members.size()) >= max_len) return true;
        for (ElementId x = least; x < e.size(); ++x) {
            if (x == e.zero() || !has(within, x)) continue;
            auto next = e.sum(total, x);
            if (!next) continue;
            fam.members.push_back(x);
            fam.total = *next;
            if (!visit(fam)) return false;
            if (!self(self, x, *next)) return false;
            fam.members.pop_back();
        }
        return true;
    };
    dfs(dfs, 0, e.zero());
}

std::uint64_t count_families(const EffectAlgebra& e, ElemSet within, int max_len) {
    std::uint64_t n = 0;
    enumerate_families(e, within, max_len, [&](const OrthogonalFamily&) {
        ++n;
        return true;
    });
    return n;
}

namespace {

// All sums of subfamilies, as an element set. Appending x to an orthogonal
// family keeps every subfamily orthogonal, so each s (+) x below is defined.
ElemSet extend_range(const EffectAlgebra& e, ElemSet range, ElementId x) {
    ElemSet out = range;
    for (ElementId s : members(range)) {
        auto t = e.sum(s, x);
        if (!t) throw std::logic_error("subfamily of an orthogonal family was not orthogonal");
        out |= bit(*t);
    }
    return out;
}

}  // namespace

std::optional<CoverCertificate> find_cover(const EffectAlgebra& e, ElemSet m, ElemSet within,
                                           std::uint64_t budget) {
    if (((m | within) & ~e.carrier()) != 0)
        throw std::invalid_argument("set contains ids out of range");

    const int max_len = chain_height(e);
    std::uint64_t nodes = 0;
    std::vector<ElementId> stack;
    std::optional<std::vector<ElementId>> found;

    auto dfs = [&](auto&& self, ElementId least, ElementId total, ElemSet range) -> bool {
        if ((m & ~range) == 0) {
            found = stack;
            return true;
        }
        if (static_cast<int>(stack.size()) >= max_len) return false;
        for (ElementId x = least; x < e.size(); ++x) {
            if (x == e.zero() || !has(within, x)) continue;
            if (++nodes > budget) throw BudgetExceeded(budget);
            if (!e.defined(total, x)) continue;
            stack.push_back(x);
            if (self(self, x, *e.sum(total, x), extend_range(e, range, x))) return true;
            stack.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, 0, e.zero(), bit(e.zero()))) return std::nullopt;

    CoverCertificate cert;
    cert.family.members = *found;
    cert.family.total = *family_sum(e, *found);
    cert.range_within = within;
    // First subset in mask-ascending order, independently per element.
    const size_t k = found->size();
    std::vector<char> assigned(static_cast<size_t>(e.size()), 0);
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        if (++nodes > budget) throw BudgetExceeded(budget);
        std::vector<ElementId> part;
        std::vector<int> idxs;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1ull << i)) {
                part.push_back((*found)[i]);
                idxs.push_back(static_cast<int>(i));
            }
        ElementId s = *family_sum(e, part);
        if (has(m, s) && !assigned[static_cast<size_t>(s)]) {
            assigned[static_cast<size_t>(s)] = 1;
            cert.assignment.emplace(s, std::move(idxs));
        }
        if (cert.assignment.size() == static_cast<size_t>(popcount(m))) break;
    }
    return cert;
}

bool verify_cover(const EffectAlgebra& e, ElemSet m, const CoverCertificate& cert) {
    auto total = family_sum(e, cert.family.members);
    if (!total || (cert.family.total != kUndef && *total != cert.family.total)) return false;

    for (ElementId x : cert.family.members)
        if (!has(cert.range_within, x)) return false;

    for (ElementId x : members(m)) {
        auto it = cert.assignment.find(x);
        if (it == cert.assignment.end()) return false;
        std::vector<ElementId> part;
        int prev = -1;
        for (int idx : it->second) {
            if (idx <= prev || static_cast<size_t>(idx) >= cert.family.members.size())
                return false;
            prev = idx;
            part.push_back(cert.family.members[static_cast<size_t>(idx)]);
        }
        auto s = family_sum(e, part);
        if (!s || *s != x) return false;
    }
    return true;
}

std::optional<CoverCertificate> is_compatible_set(const EffectAlgebra& e, ElemSet m,
                                                  std::uint64_t budget) {
    return find_cover(e, m, e.carrier(), budget);
}

std::optional<CoverCertificate> is_internally_compatible(const EffectAlgebra& e, ElemSet m,
                                                         std::uint64_t budget) {
    return find_cover(e, m, m, budget);
}

std::optional<MutualWitness> mutually_compatible(const EffectAlgebra& e, ElementId a,
                                                 ElementId b) {
    check_id(e, a);
    check_id(e, b);
    // c and b1 are forced by a1 (cancellativity), so scanning a1 upward
    // yields the lexicographically least witness.
    for (ElementId a1 : members(e.down(a))) {
        ElementId c = e.ominus(a, a1);
        if (!e.leq(c, b)) continue;
        ElementId b1 = e.ominus(b, c);
        auto s = e.sum(a1, b1);
        if (s && e.defined(*s, c)) return MutualWitness{a1, b1, c};
    }
    return std::nullopt;
}

bool is_mutually_compatible_set(const EffectAlgebra& e, ElemSet m) {
    auto xs = members(m);
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i; j < xs.size(); ++j)
            if (!mutually_compatible(e, xs[i], xs[j])) return false;
    return true;
}

ElemSet closure(const EffectAlgebra& e, ElemSet m) {
    ElemSet s = m;
    bool grew = true;
    while (grew) {
        grew = false;
        for (ElementId y : members(s)) {
            ElemSet below = e.down(y) & e.down(e.complement(y));
            for (ElementId x : members(below)) {
                ElemSet add = bit(x) | bit(e.ominus(y, x));
                if ((add & ~s) != 0) {
                    s |= add;
                    grew = true;
                }
            }
        }
    }
    return s;
}

}  // namespace efa
