#include "efa/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "efa/construct.hpp"
#include "efa/structure.hpp"

namespace efa {

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "not_applicable";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

namespace {

// Search-effort bounds. Statements quantifying over arbitrary finite subsets
// are checked for subsets of size <= kSubsetCap (closure-based ones a notch
// lower: closures blow the sets up anyway); a cover search that exceeds its
// node budget marks the check skipped, never passed.
constexpr int kSubsetCap = 4;
constexpr int kClosureCap = 3;
constexpr int kEmbedsCap = 5;  // compatible-embeds-in-block question
constexpr std::uint64_t kCarrierBudget = 20'000'000;
constexpr std::uint64_t kSubsetBudget = 2'000'000;
constexpr std::uint64_t kSmallBudget = 1'000'000;
constexpr std::uint64_t kFamilyCap = 200'000;

std::string name_set(const EffectAlgebra& e, ElemSet s) {
    std::string out = "{";
    for (ElementId a : members(s)) {
        if (out.size() > 1) out += ",";
        out += e.name(a);
    }
    return out + "}";
}

// Map a subset of a restriction back into the parent algebra. Restrictions
// keep element names, so names are the join key.
ElemSet lift_by_name(const EffectAlgebra& sub, const EffectAlgebra& e, ElemSet s) {
    ElemSet out = 0;
    for (ElementId a : members(s)) out |= bit(e.id_of(sub.name(a)).value());
    return out;
}

// All subsets of {0..n-1} of size 1..cap, ascending by size then
// lexicographic — a fixed order keeps every report deterministic.
template <class Fn>
void for_subsets(int n, int cap, Fn&& fn) {
    std::vector<int> idx;
    for (int k = 1; k <= cap && k <= n; ++k) {
        idx.resize(k);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            ElemSet m = 0;
            for (int i : idx) m |= bit(i);
            fn(m);
            int j = k - 1;
            while (j >= 0 && idx[j] == n - k + j) --j;
            if (j < 0) break;
            ++idx[j];
            for (int t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
}

enum SubsetStatus : char { kIncompat = 0, kCompat = 1, kUnknown = 2 };

// Signals "this check could not be decided within budget"; carries no data
// beyond what BudgetExceeded already says.
struct Suite {
    const EffectAlgebra& e;
    int n;
    ClassifyResult cls;
    PropertyCheck homog, rdp;
    bool compat_all = false, compat_all_known = true;
    std::vector<ElemSet> blocks_r1;  // maximal RDP sub-effect algebras
    std::vector<ElemSet> mic;        // maximal internally compatible sets
    ElemSet sharp = 0, principal = 0, central = 0, kset = 0;
    std::vector<std::vector<char>> mutual;
    std::vector<std::pair<ElemSet, char>> subsets;  // |M| <= kSubsetCap
    std::unordered_map<ElemSet, char> status_of;

    explicit Suite(const EffectAlgebra& alg) : e(alg), n(alg.size()) {
        cls = classify(e);
        homog = is_homogeneous(e);
        rdp = has_rdp(e);
        blocks_r1 = blocks_rdp_maximal(e);
        mic = maximal_internally_compatible(e);
        sharp = sharp_elements(e);
        principal = principal_elements(e);
        central = central_elements(e);
        kset = compatibility_center(e);
        mutual.assign(n, std::vector<char>(n, 0));
        for (ElementId a = 0; a < n; ++a)
            for (ElementId b = a; b < n; ++b)
                mutual[a][b] = mutual[b][a] = mutually_compatible(e, a, b).has_value();
        try {
            compat_all = is_compatible_set(e, e.carrier(), kCarrierBudget).has_value();
        } catch (const BudgetExceeded&) {
            compat_all_known = false;
        }
        for_subsets(n, kSubsetCap, [&](ElemSet m) {
            char st = decide(m);
            subsets.emplace_back(m, st);
            status_of.emplace(m, st);
        });
    }

    // Compatibility of a small subset. Subsets of a maximal internally
    // compatible set are covered by that set's family, so only sets crossing
    // them need a search; a missing mutually compatible pair settles those
    // cheaply in the negative.
    char decide(ElemSet m) {
        for (ElemSet b : mic)
            if ((m & ~b) == 0) return kCompat;
        auto ms = members(m);
        if (ms.size() > 2) {
            for (size_t i = 0; i < ms.size(); ++i)
                for (size_t j = i + 1; j < ms.size(); ++j)
                    if (!mutual[ms[i]][ms[j]]) return kIncompat;
        }
        try {
            return is_compatible_set(e, m, kSubsetBudget) ? kCompat : kIncompat;
        } catch (const BudgetExceeded&) {
            return kUnknown;
        }
    }

    bool in_some_block(ElemSet m) const {
        for (ElemSet b : blocks_r1)
            if ((m & ~b) == 0) return true;
        return false;
    }

    // nullopt = still compatible; string = counterexample. Used by the
    // difference/sum growth checks where the grown set is expected compatible.
    std::optional<std::string> grown_incompatible(ElemSet grown) {
        for (ElemSet b : mic)
            if ((grown & ~b) == 0) return std::nullopt;
        if (!is_compatible_set(e, grown, kSubsetBudget)) return name_set(e, grown);
        return std::nullopt;
    }

    using Body = std::optional<std::string> (Suite::*)();

    void run(std::vector<TheoremCheck>& out, const char* id, bool applicable, Body body) {
        TheoremCheck c{id, CheckStatus::Pass, ""};
        if (!applicable) {
            c.status = CheckStatus::NotApplicable;
        } else {
            try {
                if (auto fail = (this->*body)()) {
                    c.status = CheckStatus::Fail;
                    c.detail = *fail;
                }
            } catch (const BudgetExceeded& b) {
                c.status = CheckStatus::Skipped;
                c.detail = b.what();
            } catch (const std::exception& ex) {
                c.status = CheckStatus::Fail;
                c.detail = std::string("unexpected error: ") + ex.what();
            }
        }
        out.push_back(std::move(c));
    }

    // --- checks -----------------------------------------------------------

    // RDP <=> homogeneous and compatible.
    std::optional<std::string> equiv() {
        if (!compat_all_known) throw BudgetExceeded(kCarrierBudget);
        bool rhs = homog.holds && compat_all;
        if (rdp.holds == rhs) return std::nullopt;
        std::ostringstream os;
        os << "rdp=" << rdp.holds << " homogeneous=" << homog.holds
           << " compatible=" << compat_all;
        return os.str();
    }

    // Orthoalgebras, RDP algebras and lattice-ordered algebras are all
    // homogeneous.
    std::optional<std::string> agoodclass() {
        if (homog.holds) return std::nullopt;
        if (cls.orthoalgebra.value) return "orthoalgebra but not homogeneous";
        if (rdp.holds) return "rdp but not homogeneous";
        if (cls.lattice.value) return "lattice-ordered but not homogeneous";
        return std::nullopt;
    }

    // n-ary homogeneity: u below an orthogonal sum and below its complement
    // decomposes along the summands.
    std::optional<std::string> homogeneousn() {
        std::optional<std::string> fail;
        std::uint64_t count = 0;
        bool blown = false;
        enumerate_families(e, e.carrier(), kSubsetCap, [&](const OrthogonalFamily& f) {
            if (++count > kFamilyCap) {
                blown = true;
                return false;
            }
            ElemSet cand = e.down(f.total) & e.down(e.complement(f.total));
            for (ElementId u : members(cand)) {
                if (!n_ary_decompose(e, u, f.members)) {
                    std::ostringstream os;
                    os << "u=" << e.name(u) << " family=(";
                    for (size_t i = 0; i < f.members.size(); ++i)
                        os << (i ? "," : "") << e.name(f.members[i]);
                    os << ") has no decomposition";
                    fail = os.str();
                    return false;
                }
            }
            return true;
        });
        if (blown) throw BudgetExceeded(kFamilyCap);
        return fail;
    }

    // A compatible set is pairwise mutually compatible, and on pairs the two
    // notions coincide.
    std::optional<std::string> compat_mutual() {
        bool unknown = false;
        for (const auto& [m, st] : subsets) {
            if (st == kUnknown) {
                unknown = true;
                continue;
            }
            auto ms = members(m);
            if (ms.size() == 2) {
                bool mut = mutual[ms[0]][ms[1]];
                if (mut != (st == kCompat))
                    return "pair " + name_set(e, m) + " mutual=" + (mut ? "1" : "0") +
                           " compatible=" + (st == kCompat ? "1" : "0");
            }
            if (st == kCompat && ms.size() >= 3) {
                for (size_t i = 0; i < ms.size(); ++i)
                    for (size_t j = i + 1; j < ms.size(); ++j)
                        if (!mutual[ms[i]][ms[j]])
                            return "compatible " + name_set(e, m) + " has non-mutual pair (" +
                                   e.name(ms[i]) + "," + e.name(ms[j]) + ")";
            }
        }
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // The closure operator is extensive, idempotent and monotone.
    std::optional<std::string> closure_laws() {
        std::optional<std::string> fail;
        for_subsets(n, kClosureCap, [&](ElemSet m) {
            if (fail) return;
            ElemSet mbar = closure(e, m);
            if (m & ~mbar) fail = "closure not extensive at " + name_set(e, m);
            else if (closure(e, mbar) != mbar)
                fail = "closure not idempotent at " + name_set(e, m);
            else if (popcount(m) <= 2) {
                for (ElementId x = 0; x < n; ++x)
                    if (mbar & ~closure(e, m | bit(x))) {
                        fail = "closure not monotone at " + name_set(e, m) + " + " + e.name(x);
                        return;
                    }
            }
        });
        return fail;
    }

    // Every internally compatible set extends to a maximal one.
    std::optional<std::string> maxcompat() {
        bool unknown = false;
        for (const auto& [m, st] : subsets) {
            (void)st;
            std::optional<CoverCertificate> ic;
            try {
                ic = is_internally_compatible(e, m, kSmallBudget);
            } catch (const BudgetExceeded&) {
                unknown = true;
                continue;
            }
            if (!ic) continue;
            bool inside = false;
            for (ElemSet b : mic)
                if ((m & ~b) == 0) {
                    inside = true;
                    break;
                }
            if (!inside)
                return "internally compatible " + name_set(e, m) + " in no maximal set";
        }
        if (unknown) throw BudgetExceeded(kSmallBudget);
        return std::nullopt;
    }

    // In a homogeneous algebra the blocks are exactly the maximal internally
    // compatible sets.
    std::optional<std::string> maxcompatisblock() {
        if (blocks_r1 == mic) return std::nullopt;
        for (ElemSet b : blocks_r1)
            if (std::find(mic.begin(), mic.end(), b) == mic.end())
                return "block " + name_set(e, b) + " not maximal internally compatible";
        for (ElemSet m : mic)
            if (std::find(blocks_r1.begin(), blocks_r1.end(), m) == blocks_r1.end())
                return "maximal internally compatible " + name_set(e, m) + " not a block";
        return "block lists differ";
    }

    // A homogeneous algebra is covered by its blocks.
    std::optional<std::string> blockcover() {
        ElemSet u = 0;
        for (ElemSet b : blocks_r1) u |= b;
        if (u == e.carrier()) return std::nullopt;
        return "uncovered " + name_set(e, e.carrier() & ~u);
    }

    // Every (small) compatible subset lies inside a block.
    std::optional<std::string> embedfinite() {
        bool unknown = false;
        for (const auto& [m, st] : subsets) {
            if (st == kIncompat) continue;
            if (in_some_block(m)) continue;
            if (st == kUnknown) unknown = true;
            else return "compatible " + name_set(e, m) + " in no block";
        }
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // The bounded forms of the block-characterization conditions agree:
    // homogeneity, compatible subsets embedding into blocks, and ranges of
    // orthogonal families (length <= 4 and <= 3) embedding into blocks.
    std::optional<std::string> bigcor_agree() {
        bool a = homog.holds;
        bool b = true, c = true;
        std::uint64_t count = 0;
        bool blown = false;
        enumerate_families(e, e.carrier(), kSubsetCap, [&](const OrthogonalFamily& f) {
            if (++count > kFamilyCap) {
                blown = true;
                return false;
            }
            ElemSet range = 0;
            for (ElementId m : f.members) range |= bit(m);
            if (!in_some_block(range)) {
                b = false;
                if (f.members.size() <= 3) c = false;
            }
            return b || c;
        });
        if (blown) throw BudgetExceeded(kFamilyCap);
        bool d = true, d_known = true;
        for (const auto& [m, st] : subsets) {
            if (st == kIncompat || in_some_block(m)) continue;
            if (st == kCompat) {
                d = false;
                d_known = true;
                break;
            }
            d_known = false;  // unknown subset outside every block
        }
        if (!d_known) throw BudgetExceeded(kSubsetBudget);
        if (a == b && b == c && c == d) return std::nullopt;
        std::ostringstream os;
        os << "homogeneous=" << a << " ranges4-embed=" << b << " ranges3-embed=" << c
           << " compat-embed=" << d;
        return os.str();
    }

    // Compatible sets stay compatible after adjoining a difference of two
    // comparable members...
    std::optional<std::string> minuscompat() {
        bool unknown = false;
        for (const auto& [m, st] : subsets) {
            if (st != kCompat) continue;
            auto ms = members(m);
            for (ElementId a : ms)
                for (ElementId b : ms) {
                    if (!e.leq(b, a)) continue;
                    ElemSet grown = m | bit(e.ominus(a, b));
                    if (grown == m) continue;
                    try {
                        if (auto bad = grown_incompatible(grown))
                            return name_set(e, m) + " + (" + e.name(a) + "-" + e.name(b) +
                                   ") -> incompatible " + *bad;
                    } catch (const BudgetExceeded&) {
                        unknown = true;
                    }
                }
        }
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // ...and after adjoining a sum of two orthogonal members.
    std::optional<std::string> pluscompat() {
        bool unknown = false;
        for (const auto& [m, st] : subsets) {
            if (st != kCompat) continue;
            auto ms = members(m);
            for (ElementId a : ms)
                for (ElementId b : ms) {
                    auto s = e.sum(a, b);
                    if (!s) continue;
                    ElemSet grown = m | bit(*s);
                    if (grown == m) continue;
                    try {
                        if (auto bad = grown_incompatible(grown))
                            return name_set(e, m) + " + (" + e.name(a) + "+" + e.name(b) +
                                   ") -> incompatible " + *bad;
                    } catch (const BudgetExceeded&) {
                        unknown = true;
                    }
                }
        }
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // A set compatible with covers drawn from its closure has an internally
    // compatible closure.
    std::optional<std::string> intclosure() {
        bool unknown = false;
        std::optional<std::string> fail;
        for_subsets(n, kClosureCap, [&](ElemSet m) {
            if (fail) return;
            ElemSet mbar = closure(e, m);
            try {
                if (!find_cover(e, m, mbar, kSmallBudget)) return;
                if (!is_internally_compatible(e, mbar, kSubsetBudget))
                    fail = name_set(e, m) + " covered within closure, closure " +
                           name_set(e, mbar) + " not internally compatible";
            } catch (const BudgetExceeded&) {
                unknown = true;
            }
        });
        if (fail) return fail;
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // Internal compatibility passes to the closure, and maximal internally
    // compatible sets are closed.
    std::optional<std::string> theone() {
        bool unknown = false;
        std::optional<std::string> fail;
        for_subsets(n, kClosureCap, [&](ElemSet m) {
            if (fail) return;
            try {
                if (!is_internally_compatible(e, m, kSmallBudget)) return;
                ElemSet mbar = closure(e, m);
                if (!is_internally_compatible(e, mbar, kSubsetBudget))
                    fail = "closure of internally compatible " + name_set(e, m) +
                           " not internally compatible";
            } catch (const BudgetExceeded&) {
                unknown = true;
            }
        });
        if (fail) return fail;
        for (ElemSet b : mic)
            if (closure(e, b) != b)
                return "maximal internally compatible " + name_set(e, b) + " not closed";
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // A closed internally compatible set absorbs differences of comparable
    // members.
    std::optional<std::string> thetwo() {
        bool unknown = false;
        std::optional<std::string> fail;
        std::set<ElemSet> seen;
        for_subsets(n, kClosureCap, [&](ElemSet m) {
            if (fail) return;
            ElemSet t = closure(e, m);
            if (!seen.insert(t).second) return;
            try {
                if (!is_internally_compatible(e, t, kSubsetBudget)) return;
                for (ElementId a : members(t))
                    for (ElementId b : members(t)) {
                        if (!e.leq(b, a)) continue;
                        ElemSet grown = t | bit(e.ominus(a, b));
                        if (grown == t) continue;
                        if (!is_internally_compatible(e, grown, kSubsetBudget)) {
                            fail = "closed internally compatible " + name_set(e, t) + " + (" +
                                   e.name(a) + "-" + e.name(b) + ") not internally compatible";
                            return;
                        }
                    }
            } catch (const BudgetExceeded&) {
                unknown = true;
            }
        });
        if (fail) return fail;
        if (unknown) throw BudgetExceeded(kSubsetBudget);
        return std::nullopt;
    }

    // Closed sub-effect algebras of a homogeneous algebra are homogeneous.
    std::optional<std::string> subalg() {
        for (ElemSet f : list_subalgebras(e)) {
            if (closure(e, f) != f) continue;
            if (!is_homogeneous(restrict_to(e, f)).holds)
                return "closed subalgebra " + name_set(e, f) + " not homogeneous";
        }
        return std::nullopt;
    }

    // The sharp elements form a sub-effect algebra that is an orthoalgebra.
    std::optional<std::string> esblock() {
        if (!is_sub_effect_algebra(e, sharp))
            return "sharp set " + name_set(e, sharp) + " not a sub-effect algebra";
        try {
            EffectAlgebra es = sharp_subalgebra(e);
            if (!classify(es).orthoalgebra.value)
                return "sharp subalgebra not an orthoalgebra";
        } catch (const SharpClosureError& err) {
            return std::string("sharp elements not closed under difference: ") + err.what();
        }
        return std::nullopt;
    }

    // A block of the sharp subalgebra contained in a block of E is exactly
    // that block's center.
    std::optional<std::string> esblockcenter() {
        EffectAlgebra es = sharp_subalgebra(e);
        for (ElemSet b0 : blocks_rdp_maximal(es)) {
            ElemSet b0l = lift_by_name(es, e, b0);
            for (ElemSet b : blocks_r1) {
                if (b0l & ~b) continue;
                EffectAlgebra ba = restrict_to(e, b);
                ElemSet cb = lift_by_name(ba, e, central_elements(ba));
                if (cb != b0l)
                    return "sharp block " + name_set(e, b0l) + " inside block " +
                           name_set(e, b) + " but its center is " + name_set(e, cb);
            }
        }
        return std::nullopt;
    }

    // Sharpness = centrality in some block = centrality in every containing
    // block.
    std::optional<std::string> blockcenter() {
        for (ElementId a = 0; a < n; ++a) {
            BlockCentrality bc = central_in_block(e, a);
            bool sh = has(sharp, a);
            if (sh != bc.in_some || sh != bc.in_every_containing) {
                std::ostringstream os;
                os << e.name(a) << ": sharp=" << sh << " central-in-some=" << bc.in_some
                   << " central-in-all=" << bc.in_every_containing;
                return os.str();
            }
        }
        return std::nullopt;
    }

    // Under RDP: sharp, central and principal elements coincide.
    std::optional<std::string> rieszcenter() {
        if (sharp == central && central == principal) return std::nullopt;
        std::ostringstream os;
        os << "sharp=" << name_set(e, sharp) << " central=" << name_set(e, central)
           << " principal=" << name_set(e, principal);
        return os.str();
    }

    // C(E) = C(K(E)) = sharp elements of K(E); K(E) is closed and
    // homogeneous.
    std::optional<std::string> centers_eq() {
        if (closure(e, kset) != kset)
            return "compatibility center " + name_set(e, kset) + " not closed";
        EffectAlgebra ka = restrict_to(e, kset);
        if (!is_homogeneous(ka).holds)
            return "compatibility center not homogeneous";
        ElemSet ck = lift_by_name(ka, e, central_elements(ka));
        ElemSet sk = lift_by_name(ka, e, sharp_elements(ka));
        if (central != ck)
            return "C(E)=" + name_set(e, central) + " but C(K(E))=" + name_set(e, ck);
        if (central != sk)
            return "C(E)=" + name_set(e, central) + " but K(E) sharp=" + name_set(e, sk);
        return std::nullopt;
    }

    // The center is a Boolean sub-effect algebra; central elements have meets
    // with everything, meeting is a morphism, and every central element
    // splits E into a direct product of its interval and the complement's.
    std::optional<std::string> center_props() {
        if (!is_sub_effect_algebra(e, central))
            return "center " + name_set(e, central) + " not a sub-effect algebra";
        EffectAlgebra ca = restrict_to(e, central);
        if (!classify(ca).boolean_alg.value) return "center not a Boolean algebra";
        for (ElementId a : members(central)) {
            for (ElementId x = 0; x < n; ++x)
                if (!e.meet(a, x))
                    return "meet(" + e.name(a) + "," + e.name(x) + ") missing";
            for (ElementId x = 0; x < n; ++x)
                for (ElementId y = x; y < n; ++y) {
                    auto s = e.sum(x, y);
                    if (!s) continue;
                    ElementId ax = *e.meet(a, x), ay = *e.meet(a, y);
                    auto as = e.sum(ax, ay);
                    if (!as || *as != *e.meet(a, *s))
                        return "x -> " + e.name(a) + "^x not a morphism at (" + e.name(x) +
                               "," + e.name(y) + ")";
                }
        }
        for (ElementId a : members(central)) {
            EffectAlgebra prod = [&] {
                if (a == e.zero()) return direct_product(catalog("boolean", 0), e);
                if (a == e.one()) return direct_product(e, catalog("boolean", 0));
                return direct_product(interval_algebra(e, a),
                                      interval_algebra(e, e.complement(a)));
            }();
            if (prod.size() != n || !find_isomorphism(e, prod))
                return "E not isomorphic to [0," + e.name(a) + "] x [0," +
                       e.name(e.complement(a)) + "]";
        }
        return std::nullopt;
    }

    // An element is central exactly when its down-set is a Riesz ideal.
    std::optional<std::string> central_riesz() {
        for (ElementId a = 0; a < n; ++a) {
            bool c = has(central, a);
            bool r = is_ideal(e, e.down(a)) && is_riesz_ideal(e, e.down(a));
            if (c != r) {
                std::ostringstream os;
                os << e.name(a) << ": central=" << c << " down-set riesz ideal=" << r;
                return os.str();
            }
        }
        return std::nullopt;
    }
};

}  // namespace

std::vector<TheoremCheck> run_suite(const EffectAlgebra& e) {
    Suite s(e);
    bool h = s.homog.holds;
    std::vector<TheoremCheck> out;
    out.reserve(23);
    s.run(out, "equiv", true, &Suite::equiv);
    s.run(out, "agoodclass", true, &Suite::agoodclass);
    s.run(out, "homogeneousn", h, &Suite::homogeneousn);
    s.run(out, "compat-mutual", true, &Suite::compat_mutual);
    s.run(out, "closure-laws", true, &Suite::closure_laws);
    s.run(out, "maxcompat", true, &Suite::maxcompat);
    s.run(out, "maxcompatisblock", h, &Suite::maxcompatisblock);
    s.run(out, "blockcover", h, &Suite::blockcover);
    s.run(out, "embedfinite", h, &Suite::embedfinite);
    s.run(out, "bigcor-agree", true, &Suite::bigcor_agree);
    s.run(out, "minuscompat", h, &Suite::minuscompat);
    s.run(out, "pluscompat", h, &Suite::pluscompat);
    s.run(out, "intclosure", h, &Suite::intclosure);
    s.run(out, "theone", h, &Suite::theone);
    s.run(out, "thetwo", h, &Suite::thetwo);
    s.run(out, "subalg", h, &Suite::subalg);
    s.run(out, "esblock", h, &Suite::esblock);
    s.run(out, "esblockcenter", h, &Suite::esblockcenter);
    s.run(out, "blockcenter", h, &Suite::blockcenter);
    s.run(out, "rieszcenter", s.rdp.holds, &Suite::rieszcenter);
    s.run(out, "centers-eq", h, &Suite::centers_eq);
    s.run(out, "center-props", true, &Suite::center_props);
    s.run(out, "central-riesz", true, &Suite::central_riesz);
    return out;
}

std::vector<std::pair<std::string, EffectAlgebra>> sweep_corpus(int max_n) {
    std::vector<std::pair<std::string, EffectAlgebra>> out;
    int last_n = 0, idx = 0;
    enumerate_all(max_n, [&](const EffectAlgebra& a) {
        if (a.size() != last_n) {
            last_n = a.size();
            idx = 0;
        }
        ++idx;
        out.emplace_back("enum" + std::to_string(last_n) + "_" + std::to_string(idx), a);
        return true;
    });
    auto cat = catalog_all();
    for (const auto& [label, a] : cat) out.emplace_back(label, a);
    constexpr int kSizeCap = 24;
    for (size_t i = 0; i < cat.size(); ++i)
        for (size_t j = i; j < cat.size(); ++j) {
            if (cat[i].second.size() * cat[j].second.size() > kSizeCap) continue;
            out.emplace_back("product(" + cat[i].first + "," + cat[j].first + ")",
                             direct_product(cat[i].second, cat[j].second));
        }
    for (size_t i = 0; i < cat.size(); ++i)
        for (size_t j = i; j < cat.size(); ++j) {
            int si = cat[i].second.size(), sj = cat[j].second.size();
            if (si < 2 || sj < 2 || si + sj - 2 > kSizeCap) continue;
            out.emplace_back("hsum(" + cat[i].first + "," + cat[j].first + ")",
                             horizontal_sum(cat[i].second, cat[j].second));
        }
    for (const auto& ce : catalog_entries()) {
        EffectAlgebra base = catalog(ce.name);
        std::string blabel =
            ce.takes_param ? ce.name + "(" + std::to_string(ce.default_param) + ")" : ce.name;
        for (ElementId a = 0; a < base.size(); ++a) {
            if (a == base.zero()) continue;
            out.emplace_back("interval(" + blabel + "," + base.name(a) + ")",
                             interval_algebra(base, a));
        }
    }
    return out;
}

std::string SweepSummary::text() const {
    std::ostringstream os;
    os << "sweep max_n=" << max_n << "\n";
    os << "instances=" << instances << " checks=" << (passed + failed + not_applicable + skipped)
       << " pass=" << passed << " fail=" << failed << " not_applicable=" << not_applicable
       << " skipped=" << skipped << "\n";
    for (const auto& f : failure_lines) os << "FAIL " << f << "\n";
    for (const auto& s : skip_lines) os << "SKIP " << s << "\n";
    os << "result=" << (ok() ? "OK" : "FAIL") << "\n";
    return os.str();
}

SweepSummary sweep(int max_n, int workers) {
    auto corpus = sweep_corpus(max_n);
    std::vector<std::vector<TheoremCheck>> results(corpus.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < corpus.size();) {
            try {
                results[i] = run_suite(corpus[i].second);
            } catch (const std::exception& ex) {
                results[i] = {{"suite-error", CheckStatus::Fail, ex.what()}};
            }
        }
    };
    int w = workers > 0 ? workers : (int)std::thread::hardware_concurrency();
    w = std::max(1, std::min<int>(w, (int)corpus.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < w; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    SweepSummary sum;
    sum.max_n = max_n;
    sum.instances = (int)corpus.size();
    for (size_t i = 0; i < corpus.size(); ++i)
        for (const auto& c : results[i]) {
            switch (c.status) {
                case CheckStatus::Pass: ++sum.passed; break;
                case CheckStatus::Fail:
                    ++sum.failed;
                    sum.failure_lines.push_back(corpus[i].first + " " + c.id + ": " + c.detail);
                    break;
                case CheckStatus::NotApplicable: ++sum.not_applicable; break;
                case CheckStatus::Skipped:
                    ++sum.skipped;
                    sum.skip_lines.push_back(corpus[i].first + " " + c.id + ": " + c.detail);
                    break;
            }
        }
    return sum;
}

namespace {

std::string corpus_description(int max_n) {
    std::ostringstream os;
    os << "homogeneous instances of: all algebras with at most " << max_n
       << " elements up to isomorphism, the catalog, and one generation of "
          "products/horizontal sums/intervals of catalog entries";
    return os.str();
}

// The three searches share a scaffold: scan homogeneous corpus instances,
// stop at the first counterexample.
SearchReport search_embeds(int max_n, std::uint64_t budget) {
    SearchReport r;
    r.question = "compatible-embeds-in-block";
    r.space = corpus_description(max_n) + "; subsets up to size " +
              std::to_string(kEmbedsCap);
    for (auto& [label, e] : sweep_corpus(max_n)) {
        if (!is_homogeneous(e).holds) continue;
        auto blocks = blocks_rdp_maximal(e);
        auto micl = maximal_internally_compatible(e);
        int n = e.size();
        std::vector<std::vector<char>> mutual(n, std::vector<char>(n, 0));
        for (ElementId a = 0; a < n; ++a)
            for (ElementId b = a; b < n; ++b)
                mutual[a][b] = mutual[b][a] = mutually_compatible(e, a, b).has_value();
        bool found = false;
        for_subsets(n, kEmbedsCap, [&](ElemSet m) {
            if (found) return;
            for (ElemSet b : blocks)
                if ((m & ~b) == 0) return;  // embedded, nothing to test
            bool compat;
            bool in_mic = false;
            for (ElemSet b : micl)
                if ((m & ~b) == 0) {
                    in_mic = true;
                    break;
                }
            if (in_mic) {
                compat = true;
            } else {
                auto ms = members(m);
                for (size_t i = 0; i < ms.size(); ++i)
                    for (size_t j = i + 1; j < ms.size(); ++j)
                        if (!mutual[ms[i]][ms[j]]) return;  // not compatible
                try {
                    compat = is_compatible_set(e, m, budget).has_value();
                } catch (const BudgetExceeded&) {
                    r.notes.push_back(label + ": subset " + name_set(e, m) +
                                      " undecided within budget");
                    return;
                }
            }
            if (compat) {
                found = true;
                r.counterexample_found = true;
                r.instance_label = label;
                r.algebra = e;
                for (ElementId a : members(m)) r.witness.push_back(e.name(a));
                r.detail = "compatible set " + name_set(e, m) + " lies in no block";
            }
        });
        if (found) return r;
    }
    r.detail = "no counterexample up to n=" + std::to_string(max_n);
    return r;
}

SearchReport search_krdp(int max_n, std::uint64_t budget) {
    (void)budget;
    SearchReport r;
    r.question = "k-rdp";
    r.space = corpus_description(max_n);
    for (auto& [label, e] : sweep_corpus(max_n)) {
        if (!is_homogeneous(e).holds) continue;
        ElemSet k = compatibility_center(e);
        std::optional<EffectAlgebra> ka;
        try {
            ka = restrict_to(e, k);
        } catch (const std::exception& ex) {
            r.counterexample_found = true;
            r.instance_label = label;
            r.algebra = e;
            r.detail = std::string("K(E) is not a valid restriction: ") + ex.what();
            return r;
        }
        auto p = has_rdp(*ka);
        if (!p.holds) {
            r.counterexample_found = true;
            r.instance_label = label;
            r.algebra = e;
            r.witness = {ka->name(p.witness.u), ka->name(p.witness.v1), ka->name(p.witness.v2)};
            r.detail = "K(E) violates Riesz decomposition at (" + r.witness[0] + "," +
                       r.witness[1] + "," + r.witness[2] + ")";
            return r;
        }
    }
    r.detail = "no counterexample up to n=" + std::to_string(max_n);
    return r;
}

SearchReport search_cb_block(int max_n, std::uint64_t budget) {
    (void)budget;
    SearchReport r;
    r.question = "cb-block-of-es";
    r.space = corpus_description(max_n);
    for (auto& [label, e] : sweep_corpus(max_n)) {
        if (!is_homogeneous(e).holds) continue;
        EffectAlgebra es = sharp_subalgebra(e);
        std::vector<ElemSet> es_blocks;
        for (ElemSet b0 : blocks_rdp_maximal(es)) es_blocks.push_back(lift_by_name(es, e, b0));
        for (ElemSet b : blocks_rdp_maximal(e)) {
            EffectAlgebra ba = restrict_to(e, b);
            ElemSet cb = lift_by_name(ba, e, central_elements(ba));
            if (std::find(es_blocks.begin(), es_blocks.end(), cb) == es_blocks.end()) {
                r.counterexample_found = true;
                r.instance_label = label;
                r.algebra = e;
                for (ElementId a : members(b)) r.witness.push_back(e.name(a));
                r.detail = "block " + name_set(e, b) + " has center " + name_set(e, cb) +
                           ", not a block of the sharp subalgebra";
                return r;
            }
        }
    }
    r.detail = "no counterexample up to n=" + std::to_string(max_n);
    return r;
}

}  // namespace

SearchReport search_question(const std::string& question, int max_n, std::uint64_t budget) {
    if (question == "compatible-embeds-in-block") return search_embeds(max_n, budget);
    if (question == "k-rdp") return search_krdp(max_n, budget);
    if (question == "cb-block-of-es") return search_cb_block(max_n, budget);
    throw std::invalid_argument("unknown question: " + question);
}

bool replay(const SearchReport& report) {
    if (!report.counterexample_found) return true;
    if (!report.algebra) return false;
    const EffectAlgebra& e = *report.algebra;
    if (report.question == "compatible-embeds-in-block") {
        ElemSet m = 0;
        for (const auto& nm : report.witness) {
            auto id = e.id_of(nm);
            if (!id) return false;
            m |= bit(*id);
        }
        if (!is_compatible_set(e, m)) return false;
        for (ElemSet b : blocks_rdp_maximal(e))
            if ((m & ~b) == 0) return false;
        return true;
    }
    if (report.question == "k-rdp") {
        ElemSet k = compatibility_center(e);
        try {
            return !has_rdp(restrict_to(e, k)).holds;
        } catch (const std::exception&) {
            return true;  // the restriction failure is the reported finding
        }
    }
    if (report.question == "cb-block-of-es") {
        ElemSet b = 0;
        for (const auto& nm : report.witness) {
            auto id = e.id_of(nm);
            if (!id) return false;
            b |= bit(*id);
        }
        EffectAlgebra es = sharp_subalgebra(e);
        std::vector<ElemSet> es_blocks;
        for (ElemSet b0 : blocks_rdp_maximal(es)) es_blocks.push_back(lift_by_name(es, e, b0));
        EffectAlgebra ba = restrict_to(e, b);
        ElemSet cb = lift_by_name(ba, e, central_elements(ba));
        return std::find(es_blocks.begin(), es_blocks.end(), cb) == es_blocks.end();
    }
    throw std::invalid_argument("unknown question: " + report.question);
}

}  // namespace efa
