#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "efa/core.hpp"
#include "efa/families.hpp"

namespace efa {

enum class CheckStatus { Pass, Fail, NotApplicable, Skipped };
const char* check_status_name(CheckStatus s);

// One executable check per verified result. A check whose hypotheses the
// instance does not meet reports NotApplicable; a check that runs out of
// search budget reports Skipped — neither ever counts as a pass.
struct TheoremCheck {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;  // witness on Fail, reason on Skipped
};

// Run every check against one algebra. Universally quantified set variables
// range over subsets of bounded size (4) and orthogonal families of bounded
// length; both bounds are exhaustive for the small instances the sweep feeds.
std::vector<TheoremCheck> run_suite(const EffectAlgebra& e);

// The deterministic instance corpus: every algebra with <= max_n elements up
// to isomorphism, the catalog, and one generation of size-capped products,
// horizontal sums, and intervals of catalog entries. Labels are stable.
std::vector<std::pair<std::string, EffectAlgebra>> sweep_corpus(int max_n);

struct SweepSummary {
    int max_n = 0;
    int instances = 0;
    long long passed = 0, failed = 0, not_applicable = 0, skipped = 0;
    std::vector<std::string> failure_lines;  // "label check-id: detail"
    std::vector<std::string> skip_lines;
    bool ok() const { return failed == 0; }
    std::string text() const;  // byte-stable: no timing, fixed order
};

// run_suite over the whole corpus, distributed over worker threads
// (0 = hardware default). The summary does not depend on the worker count.
SweepSummary sweep(int max_n, int workers = 0);

// Counterexample search for the open questions. Outcomes are reported, never
// assumed: a counterexample is as acceptable as exhaustion, as long as it
// replays.
struct SearchReport {
    std::string question;  // compatible-embeds-in-block | k-rdp | cb-block-of-es
    std::string space;     // human-readable description of what was scanned
    bool counterexample_found = false;
    std::string instance_label;
    std::optional<EffectAlgebra> algebra;   // the counterexample instance
    std::vector<std::string> witness;       // element names; meaning per question
    std::string detail;
    std::vector<std::string> notes;         // budget exhaustions etc.
};

SearchReport search_question(const std::string& question, int max_n,
                             std::uint64_t budget = kDefaultBudget);

// Re-run the single check a counterexample report describes against the
// embedded algebra; true iff the failure reproduces. Exhaustion reports
// replay trivially (true). Unknown questions raise std::invalid_argument.
bool replay(const SearchReport& report);

}  // namespace efa
