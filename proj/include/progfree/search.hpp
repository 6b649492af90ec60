#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "progfree/bound.hpp"
#include "progfree/points.hpp"

namespace progfree {

/// literal: the progression a, a+d, ..., a+(k-1)d only needs d != 0; it may
/// wrap and revisit points when the additive order of d is below k.
/// distinct: additionally requires the k elements to be pairwise distinct.
enum class Semantics { literal, distinct };

std::string semantics_name(Semantics sem);
Semantics parse_semantics(const std::string& name);

struct ApWitness {
    ExpVec start;
    ExpVec diff;
};

/// Finds some k-term progression inside s, or nullopt.  Deterministic scan
/// order (start then difference, by point code).
std::optional<ApWitness> contains_kap(const std::vector<ExpVec>& s, int k, int q, int n,
                                      Semantics sem);

struct SearchBudget {
    std::uint64_t max_nodes = UINT64_MAX;
    int max_points = 256;  // scale guard on q^n
};

struct SearchResult {
    int max_size = 0;
    std::vector<ExpVec> witness;  // sorted by point code
    std::uint64_t nodes_explored = 0;
    bool optimal = false;  // search tree exhausted (budget not hit)
    std::uint64_t budget_nodes = UINT64_MAX;
};

/// Exact maximum progression-free size by depth-first branch-and-bound over
/// points in a fixed order (descending AP-degree, then code).  Results,
/// witnesses and node counts are independent of the thread count; finite
/// node budgets run sequentially so the cutoff point is deterministic too.
SearchResult max_progression_free(int q, int n, int k, Semantics sem,
                                  const SearchBudget& budget = {}, int threads = 1);

/// Cartesian product by coordinate concatenation; |result| = |s1| * |s2|.
std::vector<ExpVec> product_set(const std::vector<ExpVec>& s1, const std::vector<ExpVec>& s2);

struct ReductionEntry {
    int divisor = 0;     // proper divisor N of q, 2 <= N < q
    int sub_max = 0;     // r_k(Z_N^n)
    BigInt rhs;          // (q/N)^n * sub_max
    bool holds = false;  // max_size <= rhs
};

struct BoundConsistency {
    int q = 0, n = 0, k = 0;
    int max_size = 0;  // literal semantics
    bool theorem_applicable = false;  // q prime power and q >= k
    double c_value = 0.0;
    BigInt bound_floor;     // floor(c_value^n), extended precision
    bool theorem_holds = false;
    std::vector<ReductionEntry> reductions;
    bool reductions_hold = true;
    bool ok = false;
};

/// Checks r_k(Z_q^n) <= floor(c_k(q)^n) when Theorem-type hypotheses hold,
/// and the subgroup reduction r_k(Z_q^n) <= (q/N)^n r_k(Z_N^n) for every
/// proper divisor N of q.
BoundConsistency bound_consistency(int q, int n, int k, const SearchBudget& budget = {},
                                   int threads = 1);

}  // namespace progfree
