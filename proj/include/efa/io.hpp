#pragma once

#include <optional>
#include <string>
#include <vector>

#include "efa/core.hpp"
#include "efa/verify.hpp"

namespace efa {

// Text format (one canonical spelling per algebra):
//   efa 1
//   elements <name>+
//   zero <name>
//   one <name>
//   sum <a> <b> <c>        (* a (+) b = c, nonzero operands, one orientation *)
// '#' starts a comment anywhere; names contain no whitespace and no '#'.
// Zero rows and symmetric duplicates are implicit and rejected in files.
struct ParseResult {
    std::optional<EffectAlgebra> algebra;
    std::vector<std::string> errors;  // "line L, col C: message" or "axioms: message"
    bool ok() const { return algebra.has_value(); }
};

ParseResult parse_efa(const std::string& text);
std::string serialize_efa(const EffectAlgebra& e);

// Hasse diagram of <= (cover pairs only) in DOT; sharp elements get a double
// border. Deterministic node and edge order.
std::string export_dot(const EffectAlgebra& e);

// Full classification as stable JSON (schema documented in the README);
// golden files pin this byte-for-byte for the catalog.
std::string classification_json(const EffectAlgebra& e);

// Counterexample reports round-trip through JSON with the algebra embedded
// in the text format above.
std::string search_report_json(const SearchReport& r);
SearchReport parse_search_report(const std::string& json_text);  // invalid_argument on bad input

}  // namespace efa
