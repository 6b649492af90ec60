#pragma once

#include <string>
#include <vector>

namespace progfree::selftest {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full acceptance battery (constants, counting, algebra laws,
/// rank/diagonality, key-lemma chain, exact r-values, tensor trick,
/// determinism).  One result per criterion.
std::vector<CriterionResult> run_selftest(int threads = 2);

/// Prints one PASS/FAIL line per criterion to stdout; returns true iff all
/// criteria passed.
bool print_selftest(const std::vector<CriterionResult>& results);

}  // namespace progfree::selftest
