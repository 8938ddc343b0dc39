// Acceptance harness: one line per criterion, nonzero exit on any failure.
// Each criterion re-derives its facts from scratch so a regression anywhere
// in the library surfaces here, not just in the unit suite.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "efa/construct.hpp"
#include "efa/families.hpp"
#include "efa/io.hpp"
#include "efa/structure.hpp"
#include "efa/verify.hpp"
#include "naive_oracles.hpp"

using namespace efa;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    std::vector<std::string> problems;
    Clock::time_point start = Clock::now();
    double limit_s;

    Criterion(std::string label, double limit_s) : label(std::move(label)), limit_s(limit_s) {}

    void require(bool cond, const std::string& what) {
        if (!cond) problems.push_back(what);
    }

    void finish() {
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (limit_s > 0 && secs > limit_s) {
            std::ostringstream os;
            os << "runtime " << secs << "s exceeds " << limit_s << "s";
            problems.push_back(os.str());
        }
        std::printf("%s  %s (%.2fs)\n", problems.empty() ? "PASS" : "FAIL", label.c_str(), secs);
        for (const auto& p : problems) std::printf("      - %s\n", p.c_str());
        if (!problems.empty()) ++g_failures;
    }
};

std::set<std::string> name_set(const EffectAlgebra& e, ElemSet s) {
    std::set<std::string> out;
    for (ElementId x : members(s)) out.insert(e.name(x));
    return out;
}

void criterion1() {
    Criterion c("1. catalog fidelity: six-element compatible non-homogeneous algebra", 1.0);
    EffectAlgebra e = catalog("r6");
    c.require(e.size() == 6, "size != 6");
    c.require(classify(e).compatible, "carrier should be a compatible set");
    auto rdp = has_rdp(e);
    c.require(!rdp.holds, "RDP unexpectedly holds");
    c.require(e.name(rdp.witness.u) == "a" && e.name(rdp.witness.v1) == "b" &&
                  e.name(rdp.witness.v2) == "b",
              "RDP witness is not a <= b+b");
    c.require(e.meet(*e.id_of("a"), *e.id_of("b")) == e.zero(), "a and b should meet at 0");
    auto h = is_homogeneous(e);
    c.require(!h.holds, "homogeneity unexpectedly holds");
    c.finish();
}

void criterion2() {
    Criterion c("2. two-block pasting: blocks, centers, sharp orthomodular lattice", 10.0);
    EffectAlgebra e = catalog("l18");
    c.require(e.size() == 18, "size != 18");
    c.require(classify(e).lattice.value, "should be lattice-ordered");

    auto bs = blocks(e);
    std::set<std::set<std::string>> got;
    for (ElemSet b : bs.blocks) got.insert(name_set(e, b));
    std::set<std::set<std::string>> want = {
        {"0", "a", "b", "c", "a+c", "b+c", "c+c", "(c+c)'", "a'", "b'", "c'", "1"},
        {"0", "c", "d", "e", "c+c", "c+d", "c+e", "(c+c)'", "c'", "d'", "e'", "1"}};
    c.require(got == want, "blocks differ from the expected two 12-element blocks");

    c.require(name_set(e, compatibility_center(e)) ==
                  std::set<std::string>({"0", "c", "c+c", "(c+c)'", "c'", "1"}),
              "K(E) wrong");
    c.require(name_set(e, central_elements(e)) ==
                  std::set<std::string>({"0", "c+c", "(c+c)'", "1"}),
              "C(E) wrong");

    EffectAlgebra es = sharp_subalgebra(e);
    c.require(es.size() == 12, "|E_S| != 12");
    ClassifyResult cl = classify(es);
    c.require(cl.orthoalgebra.value && cl.omp.value && cl.lattice.value,
              "E_S should be an orthomodular lattice");
    auto esb = blocks(es);
    c.require(esb.blocks.size() == 2, "E_S should have exactly 2 blocks");
    for (ElemSet b : esb.blocks)
        c.require(find_isomorphism(restrict_to(es, b), catalog("boolean", 3)).has_value(),
                  "an E_S block is not an 8-element Boolean algebra");
    c.finish();
}

void criterion3() {
    Criterion c("3. three-block pasting: homogeneity both ways, sharp orthoalgebra", 30.0);
    EffectAlgebra e = catalog("gen18");
    c.require(e.size() == 18, "size != 18");
    c.require(!classify(e).lattice.value, "should not be lattice-ordered");
    c.require(is_homogeneous(e).holds, "direct homogeneity scan failed");
    c.require(is_homogeneous_via_blocks(e), "block-based homogeneity test failed");

    auto bs = blocks(e);
    std::set<std::set<std::string>> got;
    for (ElemSet b : bs.blocks) got.insert(name_set(e, b));
    std::set<std::set<std::string>> want = {
        {"0", "a", "b", "c", "a'", "b'", "c'", "1"},
        {"0", "a", "e", "f", "a'", "e'", "f'", "1"},
        {"0", "c", "d", "e", "c+d", "d+d", "d+e", "(d+d)'", "c'", "d'", "e'", "1"}};
    c.require(got == want, "blocks differ from the expected three blocks");

    ElemSet sharp = sharp_elements(e);
    c.require(popcount(sharp) == 14, "|E_S| != 14");
    c.require(name_set(e, e.carrier() & ~sharp) ==
                  std::set<std::string>({"d", "d'", "c+d", "d+e"}),
              "unsharp set should be {d, d', c+d, d+e}");

    EffectAlgebra es = sharp_subalgebra(e);
    ClassifyResult cl = classify(es);
    c.require(cl.orthoalgebra.value, "E_S should be an orthoalgebra");
    c.require(!cl.omp.value, "E_S should not be an orthomodular poset");
    c.require(cl.omp.witness.size() == 3, "no OMP witness triple produced");
    c.finish();
}

void criterion4() {
    Criterion c("4. theorem sweep over every instance with <= 6 elements plus generations",
                600.0);
    SweepSummary s = sweep(6);
    c.require(s.instances == 231, "corpus should hold 231 instances, got " +
                                      std::to_string(s.instances));
    c.require(s.failed == 0, "sweep failures:\n" + s.text());
    c.require(s.skipped == 0, "sweep skipped checks (budget): " + std::to_string(s.skipped));
    c.require(s.passed > 0 && s.ok(), "sweep not ok");
    c.finish();
}

void criterion5() {
    Criterion c("5. cover search and closure match naive recursion on 200 random draws", 0);
    std::mt19937 rng(20240817u);
    auto corpus = sweep_corpus(6);
    for (int k = 0; k < 200; ++k) {
        const auto& [label, e] = corpus[rng() % corpus.size()];
        int n = (int)e.size();
        ElemSet m = 0;
        int size = 1 + (int)(rng() % 4);
        for (int t = 0; t < size; ++t) m |= bit((ElementId)(rng() % n));
        ElemSet within = (rng() & 1)
                             ? e.carrier()
                             : ((((ElemSet)rng() << 32) | rng()) & e.carrier()) | bit(e.zero());
        auto cert = find_cover(e, m, within);
        if (naive::cover_exists(e, m, within) != cert.has_value())
            c.require(false, "cover disagreement on " + label);
        if (cert && !verify_cover(e, m, *cert))
            c.require(false, "invalid certificate on " + label);
        if (naive::closure_of(e, m) != closure(e, m))
            c.require(false, "closure disagreement on " + label);
    }
    c.finish();
}

void criterion6() {
    Criterion c("6. products/hsums preserve homogeneity; centers split the algebra", 0);

    // pair pool: catalog entries plus everything with <= 6 elements
    std::vector<std::pair<std::string, EffectAlgebra>> pool = catalog_all();
    {
        int i = 0;
        for (const auto& e : enumerate_all(6))
            pool.emplace_back("enum#" + std::to_string(++i), e);
    }
    int products = 0, hsums = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i; j < pool.size(); ++j) {
            const auto& [la, a] = pool[i];
            const auto& [lb, b] = pool[j];
            if (!is_homogeneous(a).holds || !is_homogeneous(b).holds) continue;
            if ((int)a.size() * (int)b.size() <= 24) {
                if (!is_homogeneous(direct_product(a, b)).holds)
                    c.require(false, "product not homogeneous: " + la + " x " + lb);
                ++products;
            }
            if (a.size() >= 2 && b.size() >= 2 && (int)(a.size() + b.size()) - 2 <= 24) {
                if (!is_homogeneous(horizontal_sum(a, b)).holds)
                    c.require(false, "hsum not homogeneous: " + la + " + " + lb);
                ++hsums;
            }
        }
    }
    c.require(products >= 50 && hsums >= 100, "pair pool unexpectedly small");

    EffectAlgebra trivial = catalog("boolean", 0);
    for (const auto& [label, e] : sweep_corpus(6)) {
        for (ElementId a : members(central_elements(e))) {
            EffectAlgebra lower = a == e.zero() ? trivial : interval_algebra(e, a);
            ElementId ac = e.complement(a);
            EffectAlgebra upper = ac == e.zero() ? trivial : interval_algebra(e, ac);
            if (!find_isomorphism(e, direct_product(lower, upper)))
                c.require(false, "central split fails at " + e.name(a) + " in " + label);
        }
    }
    c.finish();
}

void criterion7() {
    Criterion c("7. serialize/parse round-trip and cover-diagram fidelity on the corpus", 0);
    for (const auto& [label, e] : sweep_corpus(6)) {
        ParseResult r = parse_efa(serialize_efa(e));
        if (!r.ok()) {
            c.require(false, "round-trip parse failed on " + label + ": " + r.errors.front());
            continue;
        }
        if (r.algebra->names() != e.names() ||
            serialize_efa(*r.algebra) != serialize_efa(e))
            c.require(false, "round-trip not the identity on " + label);

        // DOT edges == cover pairs of the order recomputed from the raw table
        std::set<std::pair<std::string, std::string>> want;
        for (auto [x, y] : naive::cover_pairs(e)) want.insert({e.name(x), e.name(y)});
        std::set<std::pair<std::string, std::string>> got;
        std::istringstream dot(export_dot(e));
        std::string line;
        while (std::getline(dot, line)) {
            auto arrow = line.find("\" -> \"");
            if (arrow == std::string::npos) continue;
            auto unescape = [](const std::string& s) {
                std::string out;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (s[i] == '\\' && i + 1 < s.size()) ++i;
                    out += s[i];
                }
                return out;
            };
            std::string dst = line.substr(arrow + 6);
            got.insert({unescape(line.substr(3, arrow - 3)),
                        unescape(dst.substr(0, dst.find_last_of('"')))});
        }
        if (got != want) c.require(false, "cover diagram wrong on " + label);
    }

    // the installed command-line tool accepts the shipped files
    for (const char* nm : {"r6", "l18", "gen18"}) {
        std::string cmd = std::string(EFA_CLI_PATH) + " check " + EFA_DATA_DIR "/" + nm +
                          ".efa > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0)
            c.require(false, std::string("CLI rejects data/") + nm + ".efa");
    }
    c.finish();
}

void criterion8() {
    Criterion c("8. open-question searches terminate and their reports replay", 0);
    for (const char* q : {"compatible-embeds-in-block", "k-rdp", "cb-block-of-es"}) {
        SearchReport rep = search_question(q, 6);
        std::string outcome = rep.counterexample_found
                                  ? "counterexample at " + rep.instance_label
                                  : "no counterexample up to n=6";
        std::printf("      %s: %s\n", q, outcome.c_str());
        if (rep.counterexample_found && !rep.algebra)
            c.require(false, std::string(q) + ": counterexample without an instance");
        if (!replay(rep)) c.require(false, std::string(q) + ": report does not replay");
        // a parsed copy of the report must replay just as well
        SearchReport back = parse_search_report(search_report_json(rep));
        if (!replay(back)) c.require(false, std::string(q) + ": serialized report drifts");
    }
    c.finish();
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0)
        std::printf("acceptance: all 8 criteria pass\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
