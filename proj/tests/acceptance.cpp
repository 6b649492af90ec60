// Acceptance battery: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Exit status 0 iff all pass.

#include <cstdio>

#include "progfree/selftest.hpp"

int main() {
    const auto results = progfree::selftest::run_selftest(/*threads=*/2);
    const bool ok = progfree::selftest::print_selftest(results);
    return ok ? 0 : 1;
}
