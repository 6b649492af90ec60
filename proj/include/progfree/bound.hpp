#pragma once

#include <cstdint>
#include <vector>

#include "progfree/numeric.hpp"

namespace progfree {

// Per-dimension bound machinery: the ratio function behind the Chernoff
// estimate, its certified minimization, and the composed constants c_k(q).

/// (1 - y^m) / (m (1-y) y^{(m-1)/3}), evaluated in log space so it stays
/// finite-or-inf for m up to ~1e7 without intermediate overflow.
/// Domain: m >= 1, 0 < y < 1.  Identically 1 for m = 1.
double chernoff_ratio(std::int64_t m, double y);

struct MinimizeOptions {
    int grid_size = 4096;      // global scan points on (0,1)
    double refine_tol = 1e-12; // golden-section bracket width
};

/// Result of minimizing chernoff_ratio(m, .) over (0,1).
/// a_value is a certified upper bound: it is the ratio re-evaluated at
/// witness_y, so any claim "A(m) < c" reduces to a_value < c at one point.
/// grid_lower is a heuristic lower estimate from the scan (never above
/// a_value); it is not a certified lower bound.
struct RatioMinimum {
    double witness_y = 0.0;
    double a_value = 0.0;
    double grid_lower = 0.0;
};

/// Global grid scan (log-spaced near both endpoints) followed by
/// golden-section refinement in the best bracket.  No unimodality assumed.
RatioMinimum minimize_a(std::int64_t m, const MinimizeOptions& options = {});

struct BoundReport {
    int k = 0;
    int q = 0;
    int d = 0;        // gcd(lcm(2..k-1), q)
    int m = 0;        // q / d
    double witness_y = 0.0;
    double a_value = 0.0;
    double c_value = 0.0;  // q * a_value
    double grid_lower = 0.0;
    bool trivial = false;  // m == 1: the ratio is identically 1, bound degenerates to q^n
};

/// The per-dimension constant c_k(q) = q * A(q/d) for prime powers q >= k >= 3.
/// Throws std::domain_error if q < k or q is not a prime power.
BoundReport progression_bound(int k, int q, const MinimizeOptions& options = {});

/// (e^{alpha/3} - e^{-2 alpha/3}) / alpha: the m -> infinity limit of
/// chernoff_ratio(m, 1 - alpha/m).
double asymptotic_constant(double alpha);

struct BetaMajorant {
    double exact = 0.0;     // chernoff_ratio(N, 1 - beta/N)
    double majorant = 0.0;  // (e^{4b/(13-b)} - e^{-9b/(13-b)}) / b, N-independent
};

/// Closed-form majorant of the ratio at y = 1 - beta/N.  Requires N >= 13 and
/// 0 < beta < 13.  The majorant dominates the exact value for beta >= 1.
BetaMajorant beta_majorant(double beta, std::int64_t n_value);

struct GeneralBoundEntry {
    int divisor = 0;       // unitary prime-power divisor N = p^a || q
    double a_value = 0.0;  // certified upper bound on A(N)
    double constant = 0.0; // q * a_value
    bool n_below_k = false;
};

struct GeneralBoundReport {
    int k = 0;
    int q = 0;
    std::vector<GeneralBoundEntry> entries;  // increasing divisor order
    int best_divisor = 0;
    double best_constant = 0.0;
    bool any_n_below_k = false;
};

/// Per-dimension constants q*A(N) over the unitary prime-power divisors of q,
/// and the best (minimal) one.  Divisors below k are flagged, not rejected.
GeneralBoundReport general_bound(int k, int q, const MinimizeOptions& options = {});

/// Known reference upper bounds for A(N), N a prime power below 13; the
/// computed witnesses are checked strictly below these values.
const std::vector<std::pair<int, double>>& reference_a_bounds();

}  // namespace progfree
