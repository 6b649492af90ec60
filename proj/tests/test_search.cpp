#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "progfree/search.hpp"
#include "progfree/verification.hpp"

using namespace progfree;

TEST_CASE("contains_kap basics") {
    SUBCASE("single point has no progression") {
        CHECK_FALSE(contains_kap({{0}}, 3, 5, 1, Semantics::literal).has_value());
    }
    SUBCASE("wrap-around progression under literal semantics") {
        // {0,2} in Z_4: 0, 2, 4=0 with d=2 (order 2 < k)
        const auto w = contains_kap({{0}, {2}}, 3, 4, 1, Semantics::literal);
        REQUIRE(w.has_value());
        CHECK(w->diff == ExpVec{2});
        CHECK_FALSE(contains_kap({{0}, {2}}, 3, 4, 1, Semantics::distinct).has_value());
    }
    SUBCASE("plain three-term progression") {
        CHECK(contains_kap({{0}, {1}, {2}}, 3, 3, 1, Semantics::literal).has_value());
        CHECK(contains_kap({{0}, {1}, {2}}, 3, 3, 1, Semantics::distinct).has_value());
        CHECK_FALSE(contains_kap({{0}, {1}}, 3, 3, 1, Semantics::literal).has_value());
    }
}

TEST_CASE("exact maxima at desk scale") {
    struct Case {
        int q, n, k, literal;
    };
    // frozen from the independent full-enumeration oracle
    const std::vector<Case> cases = {
        {3, 1, 3, 2}, {2, 1, 3, 1}, {4, 1, 3, 2}, {5, 1, 3, 2},
        {4, 1, 4, 2}, {5, 1, 4, 3}, {7, 1, 5, 4}, {9, 1, 3, 4}, {3, 2, 3, 4},
    };
    for (const auto& c : cases) {
        CAPTURE(c.q);
        CAPTURE(c.n);
        CAPTURE(c.k);
        const SearchResult r = max_progression_free(c.q, c.n, c.k, Semantics::literal);
        CHECK(r.max_size == c.literal);
        CHECK(r.optimal);
        CHECK_FALSE(contains_kap(r.witness, c.k, c.q, c.n, Semantics::literal).has_value());
        CHECK(static_cast<int>(r.witness.size()) == r.max_size);
        if (std::pow(c.q, c.n) <= 16)
            CHECK(verification::naive_max_progression_free(c.q, c.n, c.k, false) == c.literal);
    }
}

TEST_CASE("oracle equivalence for q^n <= 16, both semantics") {
    struct Inst {
        int q, n, k;
    };
    const std::vector<Inst> instances = {{2, 1, 3}, {3, 1, 3}, {4, 1, 3}, {5, 1, 3},
                                         {2, 2, 3}, {3, 2, 3}, {2, 3, 3}, {4, 1, 4},
                                         {5, 1, 4}, {7, 1, 4}, {2, 2, 4}, {13, 1, 3}};
    for (const auto& inst : instances) {
        CAPTURE(inst.q);
        CAPTURE(inst.n);
        CAPTURE(inst.k);
        for (const bool distinct : {false, true}) {
            const auto sem = distinct ? Semantics::distinct : Semantics::literal;
            const SearchResult r = max_progression_free(inst.q, inst.n, inst.k, sem);
            CHECK(r.max_size ==
                  verification::naive_max_progression_free(inst.q, inst.n, inst.k, distinct));
        }
    }
}

TEST_CASE("literal forbids at least as much as distinct") {
    for (int q : {2, 3, 4, 5, 8, 9}) {
        for (int k : {3, 4}) {
            const int lit = max_progression_free(q, 1, k, Semantics::literal).max_size;
            const int dis = max_progression_free(q, 1, k, Semantics::distinct).max_size;
            CAPTURE(q);
            CAPTURE(k);
            CHECK(lit <= dis);
        }
    }
}

TEST_CASE("r_3(Z_3^3) = 9 by branch and bound") {
    const SearchResult r = max_progression_free(3, 3, 3, Semantics::literal);
    CHECK(r.max_size == 9);
    CHECK(r.optimal);
    CHECK_FALSE(contains_kap(r.witness, 3, 3, 3, Semantics::literal).has_value());
}

TEST_CASE("budget exhaustion reports a non-optimal lower bound") {
    SearchBudget tiny;
    tiny.max_nodes = 5;
    const SearchResult r = max_progression_free(3, 2, 3, Semantics::literal, tiny);
    CHECK_FALSE(r.optimal);
    CHECK(r.max_size >= 1);  // greedy seed still supplies a witness
    CHECK_FALSE(contains_kap(r.witness, 3, 3, 2, Semantics::literal).has_value());
    CHECK(r.nodes_explored <= 5);
}

TEST_CASE("scale guard") {
    SearchBudget guard;
    guard.max_points = 16;
    CHECK_THROWS_AS(max_progression_free(3, 3, 3, Semantics::literal, guard), std::domain_error);
    CHECK_THROWS_AS(max_progression_free(5, 4, 3, Semantics::literal), std::domain_error);
}

TEST_CASE("product_set") {
    const std::vector<ExpVec> s1 = {{0}, {1}};
    const std::vector<ExpVec> s2 = {{0}};
    SUBCASE("embedding preserves size") {
        const auto p = product_set(s1, s2);
        CHECK(p.size() == 2);
        CHECK(p[0] == ExpVec{0, 0});
        CHECK(p[1] == ExpVec{1, 0});
    }
    SUBCASE("sizes multiply") {
        CHECK(product_set(s1, s1).size() == 4);
    }
}

TEST_CASE("products of maximal witnesses stay progression-free") {
    const SearchResult r1 = max_progression_free(3, 1, 3, Semantics::literal);
    const SearchResult r2 = max_progression_free(3, 2, 3, Semantics::literal);
    const auto p11 = product_set(r1.witness, r1.witness);
    const auto p12 = product_set(r1.witness, r2.witness);
    CHECK_FALSE(contains_kap(p11, 3, 3, 2, Semantics::literal).has_value());
    CHECK_FALSE(contains_kap(p12, 3, 3, 3, Semantics::literal).has_value());
    // supermultiplicativity via the tensor direction
    CHECK(r2.max_size >= r1.max_size * r1.max_size);
    CHECK(max_progression_free(3, 3, 3, Semantics::literal).max_size >=
          r1.max_size * r2.max_size);
}

TEST_CASE("identical results across 1, 2 and 8 threads") {
    for (int q : {3, 5}) {
        const int n = (q == 3) ? 3 : 1;
        const SearchResult r1 = max_progression_free(q, n, 3, Semantics::literal, {}, 1);
        const SearchResult r2 = max_progression_free(q, n, 3, Semantics::literal, {}, 2);
        const SearchResult r8 = max_progression_free(q, n, 3, Semantics::literal, {}, 8);
        CHECK(r1.max_size == r2.max_size);
        CHECK(r1.max_size == r8.max_size);
        CHECK(r1.witness == r2.witness);
        CHECK(r1.witness == r8.witness);
        CHECK(r1.nodes_explored == r2.nodes_explored);
        CHECK(r1.nodes_explored == r8.nodes_explored);
    }
}

TEST_CASE("bound consistency") {
    SUBCASE("q=3 against the per-dimension constant") {
        for (int n = 1; n <= 3; ++n) {
            const BoundConsistency c = bound_consistency(3, n, 3);
            CHECK(c.theorem_applicable);
            CHECK(c.theorem_holds);
            CHECK(c.ok);
        }
    }
    SUBCASE("q=4 reduction via N=2 is an equality case") {
        const BoundConsistency c = bound_consistency(4, 1, 3);
        REQUIRE(c.reductions.size() == 1);
        CHECK(c.reductions[0].divisor == 2);
        CHECK(c.reductions[0].sub_max == 1);
        CHECK(c.reductions[0].rhs == 2);
        CHECK(c.reductions[0].holds);
        CHECK(c.max_size == 2);
    }
    SUBCASE("composite q runs reduction checks only") {
        const BoundConsistency c = bound_consistency(6, 1, 3);
        CHECK_FALSE(c.theorem_applicable);
        CHECK(c.reductions.size() == 2);  // N = 2, 3
        CHECK(c.reductions_hold);
    }
}
