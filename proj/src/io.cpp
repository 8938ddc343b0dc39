#include "efa/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <json.hpp>
#include <sstream>

#include "efa/structure.hpp"

namespace efa {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Token {
    std::string text;
    int col;  // 1-based
};

// Tokens of one line, comments stripped.
std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace((unsigned char)line[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace((unsigned char)line[j]) && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), (int)i + 1});
        i = j;
    }
    return out;
}

std::string loc(int line, int col) {
    return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": ";
}

}  // namespace

ParseResult parse_efa(const std::string& text) {
    ParseResult res;
    auto fail = [&](int line, int col, const std::string& msg) {
        res.errors.push_back(loc(line, col) + msg);
    };

    std::vector<std::pair<int, std::vector<Token>>> lines;  // nonempty only
    {
        std::istringstream in(text);
        std::string raw;
        int ln = 0;
        while (std::getline(in, raw)) {
            ++ln;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            auto toks = tokenize(raw);
            if (!toks.empty()) lines.emplace_back(ln, std::move(toks));
        }
    }

    size_t at = 0;
    auto expect_line = [&](const char* head, size_t min_args,
                           size_t max_args) -> const std::vector<Token>* {
        if (at >= lines.size()) {
            res.errors.push_back("line " + std::to_string(lines.empty() ? 1 : lines.back().first) +
                                 ", col 1: missing '" + head + "' line");
            return nullptr;
        }
        const auto& [ln, toks] = lines[at];
        if (toks[0].text != std::string(head)) {
            fail(ln, toks[0].col, "expected '" + std::string(head) + "', got '" + toks[0].text + "'");
            return nullptr;
        }
        if (toks.size() - 1 < min_args || toks.size() - 1 > max_args) {
            fail(ln, toks[0].col, std::string("'") + head + "' takes " +
                                      (min_args == max_args ? std::to_string(min_args)
                                                            : "at least " + std::to_string(min_args)) +
                                      " argument(s)");
            return nullptr;
        }
        ++at;
        return &lines[at - 1].second;
    };

    const auto* hdr = expect_line("efa", 1, 1);
    if (!hdr) return res;
    if ((*hdr)[1].text != "1") {
        fail(lines[at - 1].first, (*hdr)[1].col, "unsupported version '" + (*hdr)[1].text + "'");
        return res;
    }

    const auto* els = expect_line("elements", 1, 10000);
    if (!els) return res;
    int els_line = lines[at - 1].first;
    std::vector<std::string> names;
    for (size_t i = 1; i < els->size(); ++i) names.push_back((*els)[i].text);
    for (size_t i = 1; i < els->size(); ++i)
        for (size_t j = i + 1; j < els->size(); ++j)
            if ((*els)[i].text == (*els)[j].text)
                fail(els_line, (*els)[j].col, "duplicate element name '" + (*els)[j].text + "'");

    auto known = [&](const Token& t, int ln) {
        if (std::find(names.begin(), names.end(), t.text) == names.end()) {
            fail(ln, t.col, "unknown name '" + t.text + "'");
            return false;
        }
        return true;
    };

    const auto* z = expect_line("zero", 1, 1);
    if (!z) return res;
    std::string zero = (*z)[1].text;
    if (!known((*z)[1], lines[at - 1].first)) return res;

    const auto* o = expect_line("one", 1, 1);
    if (!o) return res;
    std::string one = (*o)[1].text;
    if (!known((*o)[1], lines[at - 1].first)) return res;

    std::vector<std::array<std::string, 3>> entries;
    std::vector<std::pair<std::string, std::string>> seen;
    for (; at < lines.size(); ++at) {
        const auto& [ln, toks] = lines[at];
        if (toks[0].text != "sum") {
            fail(ln, toks[0].col, "expected 'sum', got '" + toks[0].text + "'");
            continue;
        }
        if (toks.size() != 4) {
            fail(ln, toks[0].col, "'sum' takes 3 arguments");
            continue;
        }
        bool ok = true;
        for (int i = 1; i <= 3; ++i) ok = known(toks[i], ln) && ok;
        if (!ok) continue;
        const std::string &a = toks[1].text, &b = toks[2].text, &c = toks[3].text;
        if (a == zero || b == zero) {
            fail(ln, toks[1].col, "zero rows are implicit; drop this entry");
            continue;
        }
        bool dup = false;
        for (const auto& [pa, pb] : seen)
            if ((pa == a && pb == b) || (pa == b && pb == a)) dup = true;
        if (dup) {
            fail(ln, toks[1].col, "duplicate or symmetric entry (" + a + "," + b + ")");
            continue;
        }
        seen.emplace_back(a, b);
        entries.push_back({a, b, c});
    }
    if (!res.errors.empty()) return res;

    auto built = EffectAlgebra::build(names, zero, one, entries);
    if (!built.ok()) {
        for (const auto& v : built.violations) res.errors.push_back("axioms: " + v.message);
        return res;
    }
    res.algebra = std::move(built.algebra);
    return res;
}

std::string serialize_efa(const EffectAlgebra& e) {
    std::ostringstream os;
    os << "efa 1\n";
    os << "elements";
    for (ElementId a = 0; a < e.size(); ++a) os << " " << e.name(a);
    os << "\n";
    os << "zero " << e.name(e.zero()) << "\n";
    os << "one " << e.name(e.one()) << "\n";
    for (ElementId a = 0; a < e.size(); ++a) {
        if (a == e.zero()) continue;
        for (ElementId b = a; b < e.size(); ++b) {
            if (b == e.zero()) continue;
            if (auto s = e.sum(a, b))
                os << "sum " << e.name(a) << " " << e.name(b) << " " << e.name(*s) << "\n";
        }
    }
    return os.str();
}

std::string export_dot(const EffectAlgebra& e) {
    auto quoted = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    ElemSet sharp = sharp_elements(e);
    std::ostringstream os;
    os << "digraph efa {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    for (ElementId a = 0; a < e.size(); ++a) {
        os << "  " << quoted(e.name(a));
        if (has(sharp, a)) os << " [peripheries=2]";
        os << ";\n";
    }
    for (ElementId a = 0; a < e.size(); ++a)
        for (ElementId b = 0; b < e.size(); ++b) {
            if (a == b || !e.leq(a, b)) continue;
            bool covers = true;  // b covers a: nothing strictly between
            for (ElementId c = 0; c < e.size() && covers; ++c)
                if (c != a && c != b && e.leq(a, c) && e.leq(c, b)) covers = false;
            if (covers) os << "  " << quoted(e.name(a)) << " -> " << quoted(e.name(b)) << ";\n";
        }
    os << "}\n";
    return os.str();
}

namespace {

ordered_json names_of(const EffectAlgebra& e, ElemSet s) {
    ordered_json arr = ordered_json::array();
    for (ElementId a : members(s)) arr.push_back(e.name(a));
    return arr;
}

ordered_json flag_json(const EffectAlgebra& e, const ClassFlag& f) {
    ordered_json j;
    j["value"] = f.value;
    if (!f.value && !f.witness.empty()) {
        ordered_json w = ordered_json::array();
        for (ElementId a : f.witness) w.push_back(e.name(a));
        j["witness"] = w;
    }
    return j;
}

ordered_json property_json(const EffectAlgebra& e, const PropertyCheck& p) {
    ordered_json j;
    j["value"] = p.holds;
    if (!p.holds)
        j["witness"] = {{"u", e.name(p.witness.u)},
                        {"v1", e.name(p.witness.v1)},
                        {"v2", e.name(p.witness.v2)}};
    return j;
}

}  // namespace

std::string classification_json(const EffectAlgebra& e) {
    ClassificationReport r = classification_report(e);
    ordered_json j;
    j["size"] = e.size();
    ordered_json nm = ordered_json::array();
    for (ElementId a = 0; a < e.size(); ++a) nm.push_back(e.name(a));
    j["elements"] = nm;
    j["zero"] = e.name(e.zero());
    j["one"] = e.name(e.one());
    j["height"] = r.height;
    j["orthoalgebra"] = flag_json(e, r.flags.orthoalgebra);
    j["omp"] = flag_json(e, r.flags.omp);
    j["lattice"] = flag_json(e, r.flags.lattice);
    j["mv"] = flag_json(e, r.flags.mv);
    j["boolean"] = flag_json(e, r.flags.boolean_alg);
    j["compatible"] = r.flags.compatible;
    j["homogeneous"] = property_json(e, r.homogeneous);
    j["rdp"] = property_json(e, r.rdp);
    ordered_json blocks = ordered_json::array();
    for (ElemSet b : r.block_set.blocks) blocks.push_back(names_of(e, b));
    j["blocks"] = blocks;
    j["block_method"] = r.block_set.method == BlockMethod::RdpMaximal
                            ? "rdp-maximal"
                            : "internally-compatible-maximal";
    j["sharp"] = names_of(e, r.sharp);
    j["principal"] = names_of(e, r.principal);
    j["central"] = names_of(e, r.central);
    j["k_center"] = names_of(e, r.k_center);
    return j.dump(2) + "\n";
}

std::string search_report_json(const SearchReport& r) {
    ordered_json j;
    j["question"] = r.question;
    j["space"] = r.space;
    j["counterexample_found"] = r.counterexample_found;
    if (r.counterexample_found) {
        j["instance_label"] = r.instance_label;
        j["witness"] = r.witness;
        if (r.algebra) j["algebra_efa"] = serialize_efa(*r.algebra);
    }
    j["detail"] = r.detail;
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

SearchReport parse_search_report(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& ex) {
        throw std::invalid_argument(std::string("bad report json: ") + ex.what());
    }
    SearchReport r;
    try {
        r.question = j.at("question").get<std::string>();
        r.space = j.at("space").get<std::string>();
        r.counterexample_found = j.at("counterexample_found").get<bool>();
        r.detail = j.at("detail").get<std::string>();
        for (const auto& n : j.value("notes", ordered_json::array()))
            r.notes.push_back(n.get<std::string>());
        if (r.counterexample_found) {
            r.instance_label = j.value("instance_label", "");
            for (const auto& w : j.value("witness", ordered_json::array()))
                r.witness.push_back(w.get<std::string>());
            if (j.contains("algebra_efa")) {
                auto parsed = parse_efa(j["algebra_efa"].get<std::string>());
                if (!parsed.ok())
                    throw std::invalid_argument("embedded algebra invalid: " + parsed.errors[0]);
                r.algebra = std::move(parsed.algebra);
            }
        }
    } catch (const ordered_json::exception& ex) {
        throw std::invalid_argument(std::string("bad report json: ") + ex.what());
    }
    return r;
}

}  // namespace efa
