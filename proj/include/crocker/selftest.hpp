#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crocker {

struct CheckResult {
    std::string group;
    std::string name;
    bool passed = false;
    std::string detail; // failure explanation, empty on pass
};

struct SelftestOptions {
    /// Run only checks whose group contains this substring; empty runs all.
    std::string filter;
    /// Test hook: appends a check that always fails.
    bool inject_fault = false;
};

/// Embedded oracle-equivalence and invariant suites on small clouds and
/// analytic ODEs. Deterministic (fixed RNG seeds).
std::vector<CheckResult> run_selftest(const SelftestOptions& opt = {});

/// Prints one line per check plus a summary; returns 0 iff all passed.
int selftest_main(const SelftestOptions& opt, std::ostream& out);

} // namespace crocker
