#pragma once

#include "progfree/numeric.hpp"

namespace progfree {

// Exact counting of the weight-bounded lattice box
//   M_{alpha,q} = { lambda in [0,q)^n : sum lambda_i <= alpha * n * (q-1) }.
// alpha is an exact rational and every membership test is a cross-multiplied
// integer comparison; floating point never touches a count.

struct MSetSpec {
    long long alpha_num = 0;
    long long alpha_den = 1;
    int q = 0;
    int n = 0;

    void validate() const;
    /// Membership of a coordinate sum: s * den <= num * n * (q-1), exact.
    bool sum_in_set(long long s) const;
    /// True iff alpha * n * (q-1) is an integer (the boundary-shell case).
    bool threshold_integral() const;
    MSetSpec complement_alpha() const;  // same box, alpha -> 1 - alpha
};

/// |M_{alpha,q}| by DP over coordinates (prefix sums of the coefficient array
/// of ((1-z^q)/(1-z))^n), exact big integers.
BigInt m_set_size(const MSetSpec& spec);

/// Strict variant: sum lambda_i < alpha * n * (q-1).
BigInt m_set_size_strict(const MSetSpec& spec);

/// q^n - |M_{alpha,q}|.
BigInt m_complement_size(const MSetSpec& spec);

struct ComplementCheck {
    bool holds = false;              // |complement(alpha)| == |M_{1-alpha}|
    bool boundary_integral = false;  // alpha * n * (q-1) in Z: identity may fail by one shell
    BigInt complement_size;
    BigInt mirror_size;
};

/// Checks the reflection identity |complement(M_alpha)| = |M_{1-alpha}| and
/// reports the integrality guard under which it can fail.
ComplementCheck complement_identity_check(const MSetSpec& spec);

struct ChernoffCheck {
    BigInt lhs;            // exact |M_{1/3,q}| in dimension n
    double rhs_log = 0.0;  // n * log(q * a_upper)
    bool holds = false;    // log(lhs) <= rhs_log
};

/// Verifies |M_{1/3,q}| <= (q * a_upper)^n in the log domain, where a_upper
/// is a certified upper bound on A(q).
ChernoffCheck chernoff_upper_check(int q, int n, double a_upper);

}  // namespace progfree
