#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpl/enumerate.hpp"

namespace wpl {

// The verification battery behind `wplcount suite` and the acceptance
// runner: ten numbered checks, each exact, together covering the lattice
// arithmetic, both algebra presentations, the counting identities and the
// determinism of the enumeration engine.  Every derived number lands in
// `values` (never timings), so a recorded run doubles as a regression
// fixture.

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;      // one line: a short tally, or the first failure
    long long elapsed_ms = 0;
    long long limit_ms = 0;  // 0 = no stated budget
    nlohmann::json values;
};

struct SuiteReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const;
};

// Runs checks 1-9 at eight workers, then again at one and two workers to
// settle check 10.  Caps come from `base`; its worker count is ignored.
SuiteReport run_suite(const EnumOptions& base = {});

// The values of every check keyed by its number: the part of the report
// that must never drift between runs, machines, or worker counts.
nlohmann::json suite_fixture(const SuiteReport&);

// One "[ n] PASS/FAIL name ..." line per check plus a summary line.
void print_suite(std::ostream&, const SuiteReport&);

}  // namespace wpl
