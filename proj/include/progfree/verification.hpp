#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "progfree/numeric.hpp"
#include "progfree/points.hpp"

namespace progfree::verification {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Exhaustive loop-based counter for M_{alpha,q}; independent of the DP path.
BigInt enumerate_m_set_size(long long alpha_num, long long alpha_den, int q, int n);

/// Exact maximum progression-free size by full subset enumeration (2^{q^n}
/// subsets); only valid for q^n <= 16.  Independent of the branch-and-bound.
int naive_max_progression_free(int q, int n, int k, bool distinct);

/// Row rank over F_p by elimination in reversed column order on the
/// transpose; independent route for cross-checking rank_mod_p.
int rank_mod_p_reversed(const std::vector<std::vector<int>>& m, int p);

// Randomized/property suites behind the `verify` command.  A given seed
// fully determines every trial, so reports are byte-reproducible.
SuiteReport verify_algebra(std::uint64_t seed);
SuiteReport verify_rank(std::uint64_t seed);
SuiteReport verify_keylemma();
SuiteReport verify_chernoff();

/// All suites.  `inject_fault` corrupts one expected constant on purpose so
/// harness plumbing (nonzero exit on failure) can be exercised.
std::vector<SuiteReport> verify_all(std::uint64_t seed, bool inject_fault = false);

std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed,
                                   bool inject_fault = false);

}  // namespace progfree::verification
