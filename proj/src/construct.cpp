#include "efa/construct.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "efa/structure.hpp"

namespace efa {

namespace {

EffectAlgebra must_build(const std::vector<std::string>& names, const std::string& zero,
                         const std::string& one,
                         const std::vector<std::array<std::string, 3>>& entries, const char* what) {
    BuildResult r = EffectAlgebra::build(names, zero, one, entries);
    if (!r.ok())
        throw std::logic_error(std::string(what) + ": table rejected by validation: " +
                               r.violations.front().message);
    return *std::move(r.algebra);
}

// Canonical entry list of an algebra: nonzero a <= b with a (+) b defined.
std::vector<std::array<std::string, 3>> table_entries(
    const EffectAlgebra& e, const std::function<std::string(ElementId)>& rename) {
    std::vector<std::array<std::string, 3>> out;
    for (ElementId a = 0; a < e.size(); ++a) {
        if (a == e.zero()) continue;
        for (ElementId b = a; b < e.size(); ++b) {
            if (b == e.zero()) continue;
            ElementId v = e.sum_raw(a, b);
            if (v != kUndef) out.push_back({rename(a), rename(b), rename(v)});
        }
    }
    return out;
}

}  // namespace

EffectAlgebra direct_product(const EffectAlgebra& e, const EffectAlgebra& f) {
    int ne = e.size(), nf = f.size();
    if (ne * nf > 64)
        throw std::invalid_argument("direct_product: carrier would exceed 64 elements");
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(ne) * nf);
    for (ElementId x = 0; x < ne; ++x)
        for (ElementId y = 0; y < nf; ++y) names.push_back(e.name(x) + "|" + f.name(y));

    const int zid = e.zero() * nf + f.zero();
    std::vector<std::array<std::string, 3>> entries;
    for (int p = 0; p < ne * nf; ++p) {
        if (p == zid) continue;
        for (int q = p; q < ne * nf; ++q) {
            if (q == zid) continue;
            ElementId sx = e.sum_raw(p / nf, q / nf);
            ElementId sy = f.sum_raw(p % nf, q % nf);
            if (sx == kUndef || sy == kUndef) continue;
            entries.push_back({names[p], names[q], names[sx * nf + sy]});
        }
    }
    return must_build(names, names[zid], names[e.one() * nf + f.one()], entries, "direct_product");
}

EffectAlgebra horizontal_sum(const EffectAlgebra& e, const EffectAlgebra& f) {
    if (e.size() < 2 || f.size() < 2)
        throw std::invalid_argument("horizontal_sum: summands need at least two elements");
    if (e.size() + f.size() - 2 > 64)
        throw std::invalid_argument("horizontal_sum: carrier would exceed 64 elements");

    std::vector<std::string> names = e.names();
    std::unordered_set<std::string> used(names.begin(), names.end());
    std::vector<std::string> fname(f.size());
    fname[f.zero()] = e.name(e.zero());
    fname[f.one()] = e.name(e.one());
    for (ElementId x = 0; x < f.size(); ++x) {
        if (x == f.zero() || x == f.one()) continue;
        std::string nm = f.name(x);
        while (used.count(nm)) nm += "~2";
        used.insert(nm);
        names.push_back(nm);
        fname[x] = nm;
    }

    auto entries = table_entries(e, [&](ElementId a) { return e.name(a); });
    auto fe = table_entries(f, [&](ElementId a) { return fname[a]; });
    entries.insert(entries.end(), fe.begin(), fe.end());
    return must_build(names, e.name(e.zero()), e.name(e.one()), entries, "horizontal_sum");
}

EffectAlgebra interval_algebra(const EffectAlgebra& e, ElementId a) {
    if (a < 0 || a >= e.size()) throw std::invalid_argument("interval_algebra: no such element");
    if (a == e.zero()) throw std::invalid_argument("interval_algebra: top must be nonzero");

    const ElemSet down = e.down(a);
    std::vector<ElementId> elems = members(down);
    std::vector<std::string> names;
    names.reserve(elems.size());
    for (ElementId x : elems) names.push_back(e.name(x));

    std::vector<std::array<std::string, 3>> entries;
    for (ElementId x : elems) {
        if (x == e.zero()) continue;
        for (ElementId y : elems) {
            if (y < x || y == e.zero()) continue;
            ElementId v = e.sum_raw(x, y);
            if (v != kUndef && has(down, v)) entries.push_back({e.name(x), e.name(y), e.name(v)});
        }
    }
    return must_build(names, e.name(e.zero()), e.name(a), entries, "interval_algebra");
}

namespace {

// ---- fixed catalog tables ----------------------------------------------

EffectAlgebra build_r6() {
    static const std::vector<std::string> names = {"0", "a", "b", "a'", "b'", "1"};
    static const std::vector<std::array<std::string, 3>> entries = {
        {"a", "a", "a'"}, {"a", "b", "b'"}, {"a", "a'", "1"}, {"b", "b", "a'"}, {"b", "b'", "1"}};
    return must_build(names, "0", "1", entries, "catalog(r6)");
}

EffectAlgebra build_l18() {
    static const std::vector<std::string> names = {
        "0", "a", "b", "c", "d", "e", "a+c", "b+c", "c+c",
        "c+d", "c+e", "(c+c)'", "a'", "b'", "c'", "d'", "e'", "1"};
    static const std::vector<std::array<std::string, 3>> entries = {
        {"a", "b", "(c+c)'"}, {"a", "c", "a+c"},   {"a", "b+c", "c'"},  {"a", "c+c", "b'"},
        {"a", "a'", "1"},     {"b", "c", "b+c"},   {"b", "a+c", "c'"},  {"b", "c+c", "a'"},
        {"b", "b'", "1"},     {"c", "c", "c+c"},   {"c", "d", "c+d"},   {"c", "e", "c+e"},
        {"c", "a+c", "b'"},   {"c", "b+c", "a'"},  {"c", "c+d", "e'"},  {"c", "c+e", "d'"},
        {"c", "(c+c)'", "c'"},{"c", "c'", "1"},    {"d", "e", "(c+c)'"},{"d", "c+c", "e'"},
        {"d", "c+e", "c'"},   {"d", "d'", "1"},    {"e", "c+c", "d'"},  {"e", "c+d", "c'"},
        {"e", "e'", "1"},     {"a+c", "b+c", "1"}, {"c+c", "(c+c)'", "1"}, {"c+d", "c+e", "1"}};
    return must_build(names, "0", "1", entries, "catalog(l18)");
}

EffectAlgebra build_gen18() {
    static const std::vector<std::string> names = {
        "0", "a", "b", "c", "d", "e", "f", "c+d", "d+d",
        "d+e", "(d+d)'", "a'", "b'", "c'", "d'", "e'", "f'", "1"};
    static const std::vector<std::array<std::string, 3>> entries = {
        {"a", "b", "c'"},     {"a", "c", "b'"},    {"a", "e", "f'"},    {"a", "f", "e'"},
        {"a", "a'", "1"},     {"b", "c", "a'"},    {"b", "b'", "1"},    {"c", "d", "c+d"},
        {"c", "e", "(d+d)'"}, {"c", "d+d", "e'"},  {"c", "d+e", "d'"},  {"c", "c'", "1"},
        {"d", "d", "d+d"},    {"d", "e", "d+e"},   {"d", "c+d", "e'"},  {"d", "d+e", "c'"},
        {"d", "(d+d)'", "d'"},{"d", "d'", "1"},    {"e", "f", "a'"},    {"e", "c+d", "d'"},
        {"e", "d+d", "c'"},   {"e", "e'", "1"},    {"f", "f'", "1"},    {"c+d", "d+e", "1"},
        {"d+d", "(d+d)'", "1"}};
    return must_build(names, "0", "1", entries, "catalog(gen18)");
}

// ---- parametric families ------------------------------------------------

EffectAlgebra build_chain(int n) {
    if (n < 1 || n > 63) throw std::invalid_argument("catalog(chain): parameter must be in 1..63");
    std::vector<std::string> names;
    names.push_back("0");
    for (int i = 1; i < n; ++i) names.push_back(std::to_string(i) + "/" + std::to_string(n));
    names.push_back("1");
    std::vector<std::array<std::string, 3>> entries;
    for (int i = 1; i <= n; ++i)
        for (int j = i; i + j <= n; ++j) entries.push_back({names[i], names[j], names[i + j]});
    return must_build(names, "0", "1", entries, "catalog(chain)");
}

EffectAlgebra build_boolean(int k) {
    if (k < 0 || k > 6) throw std::invalid_argument("catalog(boolean): parameter must be in 0..6");
    int n = 1 << k;
    std::vector<std::string> names(n);
    for (int mask = 0; mask < n; ++mask) {
        if (mask == 0) {
            names[mask] = "0";
        } else if (mask == n - 1) {
            names[mask] = "1";
        } else {
            std::string s;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) s += "x" + std::to_string(i + 1);
            names[mask] = s;
        }
    }
    std::vector<std::array<std::string, 3>> entries;
    for (int a = 1; a < n; ++a)
        for (int b = a; b < n; ++b)
            if ((a & b) == 0) entries.push_back({names[a], names[b], names[a | b]});
    return must_build(names, names[0], names[n - 1], entries, "catalog(boolean)");
}

EffectAlgebra build_mo(int k) {
    if (k < 1 || k > 31) throw std::invalid_argument("catalog(mo): parameter must be in 1..31");
    std::vector<std::string> names = {"0"};
    for (int i = 1; i <= k; ++i) {
        names.push_back("a" + std::to_string(i));
        names.push_back("a" + std::to_string(i) + "'");
    }
    names.push_back("1");
    std::vector<std::array<std::string, 3>> entries;
    for (int i = 1; i <= k; ++i) entries.push_back({names[2 * i - 1], names[2 * i], "1"});
    return must_build(names, "0", "1", entries, "catalog(mo)");
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;
        v.push_back({"r6", false, 0, "six elements, two atoms; compatible but not homogeneous",
                     [](int) { return build_r6(); },
                     {6, false, false, false, false, false, 1}});
        v.push_back({"l18", false, 0,
                     "eighteen-element lattice-ordered pasting of two MV chains sharing c",
                     [](int) { return build_l18(); },
                     {18, false, true, false, true, false, 2}});
        v.push_back({"gen18", false, 0,
                     "eighteen elements, six atoms, three blocks arranged in a cycle",
                     [](int) { return build_gen18(); },
                     {18, false, false, false, true, false, 3}});
        v.push_back({"wright", false, 0,
                     "Wright triangle: the sharp elements of gen18 as an orthoalgebra",
                     [](int) { return sharp_subalgebra(build_gen18()); },
                     {14, true, false, false, true, false, 3}});
        v.push_back({"chain", true, 3, "linear order 0 < 1/n < ... < 1 with truncated addition",
                     [](int p) { return build_chain(p); },
                     {4, false, true, true, true, true, 1}});
        v.push_back({"boolean", true, 2, "finite Boolean algebra: disjoint unions of k atoms",
                     [](int p) { return build_boolean(p); },
                     {4, true, true, true, true, true, 1}});
        v.push_back({"mo", true, 2, "horizontal sum of k four-element Boolean algebras",
                     [](int p) { return build_mo(p); },
                     {6, true, true, false, true, false, 2}});
        return v;
    }();
    return entries;
}

EffectAlgebra catalog(const std::string& name, std::optional<int> param) {
    for (const auto& ent : catalog_entries()) {
        if (ent.name != name) continue;
        if (!ent.takes_param && param)
            throw std::invalid_argument("catalog entry '" + name + "' takes no parameter");
        return ent.builder(param.value_or(ent.default_param));
    }
    throw std::invalid_argument("unknown catalog entry '" + name + "'");
}

std::vector<std::pair<std::string, EffectAlgebra>> catalog_all() {
    std::vector<std::pair<std::string, EffectAlgebra>> out;
    out.emplace_back("r6", catalog("r6"));
    out.emplace_back("l18", catalog("l18"));
    out.emplace_back("gen18", catalog("gen18"));
    out.emplace_back("wright", catalog("wright"));
    for (int n = 1; n <= 4; ++n)
        out.emplace_back("chain(" + std::to_string(n) + ")", catalog("chain", n));
    for (int k = 0; k <= 3; ++k)
        out.emplace_back("boolean(" + std::to_string(k) + ")", catalog("boolean", k));
    for (int k = 2; k <= 3; ++k)
        out.emplace_back("mo(" + std::to_string(k) + ")", catalog("mo", k));
    return out;
}

namespace {

// Exhaustive enumeration, one representative per isomorphism class.
//
// Carrier ids are 0 (zero), 1..m (middle, m = n-2), n-1 (one). The complement
// involution is fixed per shape: pairs (1,2), (3,4), ..., then self-inverse
// points. Isomorphisms preserve 0, 1 and commute with ', so they permute each
// shape's pairs/fixed points among themselves; a table is emitted iff it is
// lex-minimal under that stabilizer, which yields exactly one table per class.
class ShapeEnumerator {
  public:
    ShapeEnumerator(int n, int k, const std::function<bool(const EffectAlgebra&)>& visit)
        : n_(n), m_(n - 2), one_(n - 1), k_(k), visit_(visit) {
        comp_.assign(n_, 0);
        comp_[0] = one_;
        comp_[one_] = 0;
        for (int i = 0; i < k_; ++i) {
            comp_[1 + 2 * i] = 2 + 2 * i;
            comp_[2 + 2 * i] = 1 + 2 * i;
        }
        for (int a = 2 * k_ + 1; a <= m_; ++a) comp_[a] = a;

        t_.assign(n_ * n_, kUndef);
        decided_.assign(n_ * n_, 0);
        row_used_.assign(n_, 0);
        for (ElementId x = 0; x < n_; ++x) set_forced(0, x, x);
        for (ElementId x = 1; x < n_; ++x) set_forced(one_, x, kUndef);
        for (ElementId a = 1; a <= m_; ++a) {
            if (!decided_[a * n_ + comp_[a]]) set_forced(a, comp_[a], one_);
            def_pairs_.push_back({a, comp_[a], one_});
        }

        cell_index_.assign(n_ * n_, -1);
        for (int a = 1; a <= m_; ++a)
            for (int b = a; b <= m_; ++b) {
                if (b == comp_[a]) continue;
                cell_index_[a * n_ + b] = static_cast<int>(cells_.size());
                cell_index_[b * n_ + a] = static_cast<int>(cells_.size());
                cells_.push_back({a, b});
            }
        build_stabilizer();
    }

    // returns false if the visitor asked to stop
    bool run() {
        dfs(0);
        return !stopped_;
    }

  private:
    void set_forced(ElementId a, ElementId b, ElementId v) {
        t_[a * n_ + b] = t_[b * n_ + a] = v;
        decided_[a * n_ + b] = decided_[b * n_ + a] = 1;
        if (v != kUndef) {
            row_used_[a] |= uint64_t{1} << v;
            row_used_[b] |= uint64_t{1} << v;
        }
    }

    void build_stabilizer() {
        std::vector<int> sigma(k_);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::vector<int> fixed;
        for (int a = 2 * k_ + 1; a <= m_; ++a) fixed.push_back(a);
        do {
            for (int flips = 0; flips < (1 << k_); ++flips) {
                std::vector<int> tau = fixed;
                do {
                    std::vector<int> p(n_);
                    p[0] = 0;
                    p[one_] = one_;
                    for (int i = 0; i < k_; ++i) {
                        int ta = 1 + 2 * sigma[i], tb = 2 + 2 * sigma[i];
                        if (flips >> i & 1) std::swap(ta, tb);
                        p[1 + 2 * i] = ta;
                        p[2 + 2 * i] = tb;
                    }
                    for (size_t j = 0; j < fixed.size(); ++j) p[fixed[j]] = tau[j];
                    push_perm(p);
                } while (std::next_permutation(tau.begin(), tau.end()));
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }

    void push_perm(const std::vector<int>& p) {
        std::vector<int> inv(n_);
        for (int x = 0; x < n_; ++x) inv[p[x]] = x;
        std::vector<int> pre(cells_.size());
        for (size_t j = 0; j < cells_.size(); ++j) {
            int a = inv[cells_[j][0]], b = inv[cells_[j][1]];
            pre[j] = cell_index_[a * n_ + b];  // stabilizers map free cells to free cells
        }
        perm_.push_back(p);
        pre_cell_.push_back(std::move(pre));
    }

    // true when a stabilizer permutation makes a lex-smaller table certain,
    // comparing only cells already decided (cells are decided in list order).
    bool dominated(int depth) const {
        for (size_t p = 1; p < perm_.size(); ++p) {
            for (int j = 0; j < static_cast<int>(cells_.size()); ++j) {
                int i = pre_cell_[p][j];
                if (j >= depth || i >= depth) break;
                ElementId raw = t_[cells_[i][0] * n_ + cells_[i][1]];
                int theirs = raw == kUndef ? 0 : perm_[p][raw];
                ElementId mine_raw = t_[cells_[j][0] * n_ + cells_[j][1]];
                int mine = mine_raw == kUndef ? 0 : mine_raw;
                if (theirs != mine) {
                    if (theirs < mine) return true;
                    break;
                }
            }
        }
        return false;
    }

    // Associativity over everything decided so far: for each defined a+b and
    // defined (a+b)+c, b+c must not be settled-undefined and a+(b+c) must not
    // settle anywhere else. Cheap because defined pairs stay sparse.
    bool consistent() const {
        for (const auto& [a, b, ab] : def_pairs_) {
            for (int c = 1; c < n_; ++c) {
                if (!decided_[ab * n_ + c]) continue;
                ElementId abc = t_[ab * n_ + c];
                if (abc == kUndef) continue;
                if (!decided_[b * n_ + c]) continue;
                ElementId bc = t_[b * n_ + c];
                if (bc == kUndef) return false;
                if (decided_[a * n_ + bc] && t_[a * n_ + bc] != abc) return false;
            }
        }
        return true;
    }

    void emit() {
        std::vector<std::string> names;
        names.push_back("0");
        for (int i = 1; i <= m_; ++i) names.push_back("x" + std::to_string(i));
        names.push_back("1");
        std::vector<std::array<std::string, 3>> entries;
        for (int a = 1; a < n_; ++a)
            for (int b = a; b < n_; ++b)
                if (t_[a * n_ + b] != kUndef)
                    entries.push_back({names[a], names[b], names[t_[a * n_ + b]]});
        EffectAlgebra e = must_build(names, "0", "1", entries, "enumerate_all");
        if (!visit_(e)) stopped_ = true;
    }

    void dfs(int depth) {
        if (stopped_) return;
        if (depth == static_cast<int>(cells_.size())) {
            if (!dominated(depth)) emit();
            return;
        }
        auto [a, b] = cells_[depth];
        for (int v = kUndef; v <= m_; ++v) {
            if (v == 0) continue;  // a+b = 0 forces a = b = 0
            if (v != kUndef) {
                if (row_used_[a] >> v & 1) continue;
                if (a != b && (row_used_[b] >> v & 1)) continue;
            }
            t_[a * n_ + b] = t_[b * n_ + a] = v;
            decided_[a * n_ + b] = decided_[b * n_ + a] = 1;
            size_t pushed = def_pairs_.size();
            if (v != kUndef) {
                row_used_[a] |= uint64_t{1} << v;
                row_used_[b] |= uint64_t{1} << v;
                def_pairs_.push_back({a, b, v});
                if (a != b) def_pairs_.push_back({b, a, v});
            }
            if (consistent() && !dominated(depth + 1)) dfs(depth + 1);
            def_pairs_.resize(pushed);
            if (v != kUndef) {
                row_used_[a] &= ~(uint64_t{1} << v);
                row_used_[b] &= ~(uint64_t{1} << v);
            }
            t_[a * n_ + b] = t_[b * n_ + a] = kUndef;
            decided_[a * n_ + b] = decided_[b * n_ + a] = 0;
            if (stopped_) return;
        }
    }

    int n_, m_, one_, k_;
    const std::function<bool(const EffectAlgebra&)>& visit_;
    std::vector<int> comp_;
    std::vector<ElementId> t_;
    std::vector<char> decided_;
    std::vector<uint64_t> row_used_;
    std::vector<std::array<ElementId, 3>> def_pairs_;
    std::vector<std::array<int, 2>> cells_;
    std::vector<int> cell_index_;
    std::vector<std::vector<int>> perm_;
    std::vector<std::vector<int>> pre_cell_;
    bool stopped_ = false;
};

}  // namespace

void enumerate_all(int max_n, const std::function<bool(const EffectAlgebra&)>& visit) {
    if (max_n > kEnumerationCap)
        throw std::invalid_argument("enumerate_all: cap is " + std::to_string(kEnumerationCap) +
                                    " elements");
    for (int n = 2; n <= max_n; ++n)
        for (int k = 0; 2 * k <= n - 2; ++k)
            if (!ShapeEnumerator(n, k, visit).run()) return;
}

std::vector<EffectAlgebra> enumerate_all(int max_n) {
    std::vector<EffectAlgebra> out;
    enumerate_all(max_n, [&](const EffectAlgebra& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

}  // namespace efa
