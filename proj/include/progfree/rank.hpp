#pragma once

#include <vector>

#include "progfree/algebra.hpp"
#include "progfree/lattice.hpp"
#include "progfree/points.hpp"
#include "progfree/search.hpp"

namespace progfree {

using FpMatrix = std::vector<std::vector<int>>;

/// [2a-b, 3a-2b, ..., (k-1)a-(k-2)b], all mod q componentwise.
std::vector<ExpVec> progression_points(const ExpVec& a, const ExpVec& b, int k, int q);

struct ProgressionMatrix {
    FpMatrix entries;  // entries[i][j] = prod_r coeff_at(P, r a_i - (r-1) a_j mod q)
    std::vector<ExpVec> source_a;
    int k = 0;
    int p = 0;
};

/// The t x t matrix of progression-coefficient products.  Diagonal entries
/// equal coeff_at(P, a_i)^{k-2}.  Throws on duplicate points.
ProgressionMatrix build_b_matrix(const std::vector<ExpVec>& a_set, const AlgebraElement& poly,
                                 int k);

/// Row rank over F_p by Gaussian elimination.
int rank_mod_p(const FpMatrix& m, int p);

/// r*a != r*b mod q for distinct a, b in s and 1 <= r <= k-1.
bool is_r_injective(const std::vector<ExpVec>& s, int q, int k);

struct RankBoundReport {
    int rank = 0;
    BigInt bound;  // 2^{k-2} * |M_{alpha,q}|
    bool holds = false;
};

/// rank(B) vs 2^{k-2}|M_{alpha,q}|.  Preconditions (checked, throwing):
/// support(P) inside M_{2 alpha}; a_set r-injective.  The inequality is
/// guaranteed when P additionally satisfies the progression-vanishing
/// hypothesis (see verify_vanishing); without it the rank can exceed the
/// bound, so `holds` is reported, not asserted.
RankBoundReport check_rank_bound(const std::vector<ExpVec>& a_set, const AlgebraElement& poly,
                                 const Rational& alpha, int k);

/// True iff for every pair of distinct a, b in b1 some progression point
/// r a - (r-1) b falls outside b1.  Must hold whenever bfull (>= b1) is
/// k-AP-free, since b, a, 2a-b, ... is a k-AP with difference a - b != 0.
bool verify_vanishing(const std::vector<ExpVec>& b1, const std::vector<ExpVec>& bfull, int k,
                      int q);

struct CosetClass {
    ExpVec representative;        // lexicographically least member of A_j
    std::vector<ExpVec> reduced;  // B_j = (A_j - r_j)/d, canonical in Z_{q/d}^n
    int original_size = 0;
};

struct CosetReduction {
    int d = 0;  // gcd(lcm(2..k-1), q)
    int q = 0, n = 0, k = 0;
    std::vector<CosetClass> cosets;  // ordered by representative
};

/// Partitions a_set by coset of d*Z_q^n and rescales each class into
/// Z_{q/d}^n.  Lifting d*B_j + r_j mod q recovers the class exactly.
CosetReduction kernel_reduce(const std::vector<ExpVec>& a_set, int q, int n, int k);

/// d * b + r_j mod q for every b in the class.
std::vector<ExpVec> lift_coset(const CosetClass& coset, int d, int q);

struct CosetCheck {
    ExpVec representative;
    int size = 0;
    bool lift_sound = false;
    bool ap_free = false;
    bool r_injective = false;
    bool dimension_count = false;  // |B_j ^ M_{2/3}| >= |B_j| - |M_{1/3}|
    bool vanishing = false;
    bool diagonal_unit = false;
    int rank = 0;
    BigInt rank_bound;
    bool rank_ok = false;
    bool ok = false;
};

struct KeyLemmaReport {
    int q = 0, n = 0, k = 0;
    int d = 0;
    int q_reduced = 0;        // q / d
    bool reduced_below_k = false;  // q/d < k: the reduction leaves the stated hypotheses
    int max_size = 0;
    std::vector<ExpVec> witness;
    BigInt bound;  // (2^{k-2}+1) d^n |M_{1/3,q/d}|
    bool bound_holds = false;
    std::vector<CosetCheck> cosets;
    bool ok = false;
};

/// End-to-end check at desk scale: exact maximum vs the coset bound, then for
/// the maximal witness the full reduce / vanishing / dimension-count /
/// diagonality / rank chain on every coset class.
KeyLemmaReport verify_key_lemma(int q, int n, int k, const SearchBudget& budget = {},
                                int threads = 1);

}  // namespace progfree
