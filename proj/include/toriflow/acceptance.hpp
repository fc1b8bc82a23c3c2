// The release gate: ten end-to-end checks tying the library's modules to
// the results they implement, runnable from the test suite and from the
// CLI. Each criterion reports pass/fail plus a one-line summary; failures
// carry the first observed counterexample.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toriflow {

struct CriterionResult {
    int number = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool all_passed() const {
        for (const CriterionResult& c : criteria)
            if (!c.passed) return false;
        return true;
    }
};

// Runs all ten criteria in order. When `out` is given, prints one
// "criterion N: PASS/FAIL title -- detail" line as each finishes.
// Deterministic: all sampling uses fixed seeds.
AcceptanceReport run_acceptance(std::ostream* out = nullptr);

}  // namespace toriflow
