#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "efa/construct.hpp"
#include "efa/io.hpp"
#include "efa/structure.hpp"
#include "efa/verify.hpp"

using namespace efa;

namespace {

// exit 2: the invocation is wrong (flags, unknown names, unreadable files)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// exit 1: the input file does not describe a valid algebra
struct ContentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int g_exit = 0;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

EffectAlgebra load(const std::string& path) {
    auto res = parse_efa(read_file(path));
    if (!res.ok()) {
        std::string msg = path + " is not a valid algebra:";
        for (const auto& e : res.errors) msg += "\n  " + e;
        throw ContentError(msg);
    }
    return *std::move(res.algebra);
}

std::string brace_set(const EffectAlgebra& e, ElemSet s) {
    std::string out = "{";
    for (ElementId a : members(s)) {
        if (out.size() > 1) out += ", ";
        out += e.name(a);
    }
    return out + "}";
}

ElemSet parse_set(const EffectAlgebra& e, const std::string& csv) {
    ElemSet s = 0;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ',')) {
        if (cur.empty()) continue;
        auto id = e.id_of(cur);
        if (!id) throw UsageError("unknown element name '" + cur + "'");
        s |= bit(*id);
    }
    return s;
}

void print_names(const EffectAlgebra& e, ElemSet s, bool json) {
    if (json) {
        std::string out = "[";
        for (ElementId a : members(s)) {
            if (out.size() > 1) out += ", ";
            out += "\"" + e.name(a) + "\"";
        }
        std::cout << out << "]\n";
    } else {
        for (ElementId a : members(s)) std::cout << e.name(a) << "\n";
    }
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

void cmd_classify(const EffectAlgebra& e, bool json) {
    if (json) {
        std::cout << classification_json(e);
        return;
    }
    ClassificationReport r = classification_report(e);
    auto flag = [&](const char* label, const ClassFlag& f) {
        std::cout << label << ": " << yesno(f.value);
        if (!f.value && !f.witness.empty()) {
            std::cout << "  (witness:";
            for (ElementId a : f.witness) std::cout << " " << e.name(a);
            std::cout << ")";
        }
        std::cout << "\n";
    };
    auto prop = [&](const char* label, const PropertyCheck& p) {
        std::cout << label << ": " << yesno(p.holds);
        if (!p.holds)
            std::cout << "  (witness: u=" << e.name(p.witness.u) << " v1=" << e.name(p.witness.v1)
                      << " v2=" << e.name(p.witness.v2) << ")";
        std::cout << "\n";
    };
    std::cout << "elements: " << e.size() << "\n";
    std::cout << "height: " << r.height << "\n";
    flag("orthoalgebra", r.flags.orthoalgebra);
    flag("omp", r.flags.omp);
    flag("lattice", r.flags.lattice);
    flag("mv", r.flags.mv);
    flag("boolean", r.flags.boolean_alg);
    std::cout << "compatible: " << yesno(r.flags.compatible) << "\n";
    prop("homogeneous", r.homogeneous);
    prop("rdp", r.rdp);
    std::cout << "blocks ("
              << (r.block_set.method == BlockMethod::RdpMaximal ? "rdp-maximal"
                                                                : "internally-compatible-maximal")
              << "): " << r.block_set.blocks.size() << "\n";
    for (ElemSet b : r.block_set.blocks) std::cout << "  " << brace_set(e, b) << "\n";
    std::cout << "sharp (" << popcount(r.sharp) << "): " << brace_set(e, r.sharp) << "\n";
    std::cout << "principal (" << popcount(r.principal) << "): " << brace_set(e, r.principal)
              << "\n";
    std::cout << "central (" << popcount(r.central) << "): " << brace_set(e, r.central) << "\n";
    std::cout << "k-center (" << popcount(r.k_center) << "): " << brace_set(e, r.k_center) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite effect algebra toolkit"};
    app.require_subcommand(1);

    std::string file, file_b, out, set_csv, within_csv, top_name, cat_name, question_name;
    bool json = false;
    int max_n = 6, param = -1, workers = 0;
    std::uint64_t budget = kDefaultBudget;

    auto* c_check = app.add_subcommand("check", "validate a .efa file against the axioms");
    c_check->add_option("file", file)->required();
    c_check->callback([&] {
        auto res = parse_efa(read_file(file));
        if (res.ok()) {
            std::cout << "ok: " << res.algebra->size() << " elements\n";
        } else {
            for (const auto& e : res.errors) std::cout << e << "\n";
            g_exit = 1;
        }
    });

    auto* c_classify = app.add_subcommand("classify", "full structural classification");
    c_classify->add_option("file", file)->required();
    c_classify->add_flag("--json", json);
    c_classify->callback([&] { cmd_classify(load(file), json); });

    auto add_set_cmd = [&](const char* name, const char* help, auto compute) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", file)->required();
        c->add_flag("--json", json);
        c->callback([&, compute] {
            EffectAlgebra e = load(file);
            compute(e);
        });
        return c;
    };
    add_set_cmd("blocks", "blocks, one per line", [&](const EffectAlgebra& e) {
        auto bs = blocks(e).blocks;
        if (json) {
            std::cout << "[";
            for (size_t i = 0; i < bs.size(); ++i) {
                std::cout << (i ? ", [" : "[");
                auto ms = members(bs[i]);
                for (size_t k = 0; k < ms.size(); ++k)
                    std::cout << (k ? ", \"" : "\"") << e.name(ms[k]) << "\"";
                std::cout << "]";
            }
            std::cout << "]\n";
        } else {
            for (ElemSet b : bs) std::cout << brace_set(e, b) << "\n";
        }
    });
    add_set_cmd("sharp", "sharp elements", [&](const EffectAlgebra& e) {
        print_names(e, sharp_elements(e), json);
    });
    add_set_cmd("center", "central elements", [&](const EffectAlgebra& e) {
        print_names(e, central_elements(e), json);
    });
    add_set_cmd("kcenter", "compatibility center K(E)", [&](const EffectAlgebra& e) {
        print_names(e, compatibility_center(e), json);
    });

    auto* c_closure = app.add_subcommand("closure", "closure of a set of elements");
    c_closure->add_option("file", file)->required();
    c_closure->add_option("--set", set_csv, "comma-separated element names")->required();
    c_closure->add_flag("--json", json);
    c_closure->callback([&] {
        EffectAlgebra e = load(file);
        print_names(e, closure(e, parse_set(e, set_csv)), json);
    });

    auto* c_cover = app.add_subcommand("cover", "orthogonal cover of a set, or 'none'");
    c_cover->add_option("file", file)->required();
    c_cover->add_option("--set", set_csv, "set to cover")->required();
    c_cover->add_option("--within", within_csv, "allowed family members (default: all)");
    c_cover->add_option("--budget", budget, "search node budget");
    c_cover->callback([&] {
        EffectAlgebra e = load(file);
        ElemSet m = parse_set(e, set_csv);
        ElemSet w = within_csv.empty() ? e.carrier() : parse_set(e, within_csv);
        auto cert = find_cover(e, m, w, budget);
        if (!cert) {
            std::cout << "none\n";
            return;
        }
        std::cout << "family: (";
        for (size_t i = 0; i < cert->family.members.size(); ++i)
            std::cout << (i ? ", " : "") << e.name(cert->family.members[i]);
        std::cout << ")\n";
        for (const auto& [elem, idxs] : cert->assignment) {
            std::cout << "  " << e.name(elem) << " = (";
            for (size_t i = 0; i < idxs.size(); ++i) std::cout << (i ? ", " : "") << idxs[i];
            std::cout << ")\n";
        }
    });

    auto* c_product = app.add_subcommand("product", "direct product of two algebras");
    c_product->add_option("a", file)->required();
    c_product->add_option("b", file_b)->required();
    c_product->add_option("-o,--out", out)->required();
    c_product->callback([&] {
        EffectAlgebra p = direct_product(load(file), load(file_b));
        write_file(out, serialize_efa(p));
        std::cout << "wrote " << out << ": " << p.size() << " elements\n";
    });

    auto* c_hsum = app.add_subcommand("hsum", "horizontal sum of two algebras");
    c_hsum->add_option("a", file)->required();
    c_hsum->add_option("b", file_b)->required();
    c_hsum->add_option("-o,--out", out)->required();
    c_hsum->callback([&] {
        EffectAlgebra h = horizontal_sum(load(file), load(file_b));
        write_file(out, serialize_efa(h));
        std::cout << "wrote " << out << ": " << h.size() << " elements\n";
    });

    auto* c_interval = app.add_subcommand("interval", "interval algebra [0,a]");
    c_interval->add_option("file", file)->required();
    c_interval->add_option("--top", top_name, "upper bound element")->required();
    c_interval->add_option("-o,--out", out)->required();
    c_interval->callback([&] {
        EffectAlgebra e = load(file);
        auto id = e.id_of(top_name);
        if (!id) throw UsageError("unknown element name '" + top_name + "'");
        EffectAlgebra iv = interval_algebra(e, *id);
        write_file(out, serialize_efa(iv));
        std::cout << "wrote " << out << ": " << iv.size() << " elements\n";
    });

    auto* c_catalog = app.add_subcommand("catalog", "write a named example algebra");
    c_catalog->add_option("name", cat_name)->required();
    c_catalog->add_option("param", param, "parameter for parametric families");
    c_catalog->add_option("-o,--out", out)->required();
    c_catalog->callback([&] {
        EffectAlgebra e =
            catalog(cat_name, param >= 0 ? std::optional<int>(param) : std::nullopt);
        write_file(out, serialize_efa(e));
        std::cout << "wrote " << out << ": " << e.size() << " elements\n";
    });

    auto* c_suite = app.add_subcommand("suite", "run every theorem check against one algebra");
    c_suite->add_option("file", file)->required();
    c_suite->callback([&] {
        auto checks = run_suite(load(file));
        int fails = 0, skips = 0;
        for (const auto& c : checks) {
            std::cout << check_status_name(c.status) << "\t" << c.id;
            if (!c.detail.empty()) std::cout << ": " << c.detail;
            std::cout << "\n";
            fails += c.status == CheckStatus::Fail;
            skips += c.status == CheckStatus::Skipped;
        }
        std::cout << checks.size() << " checks, " << fails << " failed, " << skips
                  << " skipped\n";
        g_exit = fails ? 1 : (skips ? 3 : 0);
    });

    auto* c_sweep = app.add_subcommand("sweep", "theorem suite over the whole instance corpus");
    c_sweep->add_option("--max-n", max_n, "enumerate all algebras up to this size")->required();
    c_sweep->add_option("--workers", workers, "worker threads (default: hardware)");
    c_sweep->callback([&] {
        SweepSummary s = sweep(max_n, workers);
        std::cout << s.text();
        g_exit = s.failed ? 1 : (s.skipped ? 3 : 0);
    });

    auto* c_question = app.add_subcommand("question", "counterexample search for an open question");
    c_question->add_option("name", question_name,
                           "compatible-embeds-in-block | k-rdp | cb-block-of-es")
        ->required();
    c_question->add_option("--max-n", max_n, "enumeration bound for the search space");
    c_question->add_option("--budget", budget, "per-cover search node budget");
    c_question->add_option("-o,--out", out, "write the JSON report here");
    c_question->callback([&] {
        SearchReport r = search_question(question_name, max_n, budget);
        std::cout << "question: " << r.question << "\n";
        std::cout << "space: " << r.space << "\n";
        if (r.counterexample_found) {
            std::cout << "outcome: counterexample at " << r.instance_label << "\n";
            std::cout << "detail: " << r.detail << "\n";
            std::cout << "replay: " << (replay(r) ? "reproduced" : "DID NOT REPRODUCE") << "\n";
        } else {
            std::cout << "outcome: " << r.detail << "\n";
        }
        if (!r.notes.empty()) std::cout << "notes: " << r.notes.size() << " budget note(s)\n";
        if (!out.empty()) std::cout << "wrote " << out << "\n";
        if (!out.empty()) write_file(out, search_report_json(r));
    });

    auto* c_dot = app.add_subcommand("export-dot", "Hasse diagram in DOT format");
    c_dot->add_option("file", file)->required();
    c_dot->add_option("-o,--out", out)->required();
    c_dot->callback([&] {
        write_file(out, export_dot(load(file)));
        std::cout << "wrote " << out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContentError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return g_exit;
}
