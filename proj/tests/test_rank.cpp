#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "progfree/rank.hpp"
#include "progfree/verification.hpp"

using namespace progfree;

namespace {

std::vector<ExpVec> box_points(int q, int n) {
    std::vector<ExpVec> pts;
    ExpVec v(n, 0);
    for (;;) {
        pts.push_back(v);
        int i = 0;
        while (i < n && ++v[i] == q) v[i++] = 0;
        if (i == n) break;
    }
    return pts;
}

}  // namespace

TEST_CASE("progression_points") {
    SUBCASE("a == b gives constant points") {
        const auto pts = progression_points({3}, {3}, 5, 7);
        REQUIRE(pts.size() == 3);
        for (const auto& p : pts) CHECK(p == ExpVec{3});
    }
    SUBCASE("single step") {
        const auto pts = progression_points({1}, {4}, 3, 5);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0] == ExpVec{3});  // 2*1 - 4 = -2 = 3 mod 5
    }
    SUBCASE("k=5 chain") {
        const auto pts = progression_points({2}, {1}, 5, 7);
        CHECK(pts == std::vector<ExpVec>{{3}, {4}, {5}});
    }
}

TEST_CASE("build_b_matrix") {
    SUBCASE("full-support indicator gives the all-ones matrix") {
        const Ambient amb(3, 1);
        const AlgebraElement p = indicator_poly(amb, box_points(3, 1));
        const auto m = build_b_matrix(box_points(3, 1), p, 3);
        for (const auto& row : m.entries)
            for (int x : row) CHECK(x == 1);
    }
    SUBCASE("singleton") {
        const Ambient amb(5, 1);
        const AlgebraElement p = indicator_poly(amb, {{2}});
        const auto m = build_b_matrix({{2}}, p, 3);
        REQUIRE(m.entries.size() == 1);
        CHECK(m.entries[0][0] == 1);  // 2a - a = a
    }
    SUBCASE("diagonal entries are coeff(P,a)^{k-2}") {
        const Ambient amb(5, 1);
        AlgebraElement p(amb);
        p.add_term({1}, 2);
        const auto m = build_b_matrix({{1}}, p, 4);
        CHECK(m.entries[0][0] == 4);  // 2^2 mod 5
    }
    SUBCASE("duplicate points rejected") {
        const Ambient amb(3, 1);
        CHECK_THROWS_AS(build_b_matrix({{1}, {1}}, AlgebraElement::one(amb), 3),
                        std::invalid_argument);
    }
}

TEST_CASE("rank_mod_p") {
    CHECK(rank_mod_p({{1, 0}, {0, 1}}, 5) == 2);
    CHECK(rank_mod_p({{0, 0}, {0, 0}}, 3) == 0);
    CHECK(rank_mod_p({{1, 2}, {2, 4}}, 5) == 1);  // second row = 2 * first
    CHECK(rank_mod_p({{2, 0}, {0, 1}}, 2) == 1);  // 2 = 0 mod 2
}

TEST_CASE("rank agrees with an independent elimination order") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 300; ++trial) {
        const int p = std::vector<int>{2, 3, 5, 7}[rng() % 4];
        const int rows = 1 + static_cast<int>(rng() % 6);
        const int cols = 1 + static_cast<int>(rng() % 6);
        FpMatrix m(rows, std::vector<int>(cols));
        for (auto& row : m)
            for (int& x : row) x = static_cast<int>(rng() % p);
        CAPTURE(p);
        CHECK(rank_mod_p(m, p) == verification::rank_mod_p_reversed(m, p));
    }
}

TEST_CASE("r-injectivity") {
    CHECK(is_r_injective({{0}, {1}, {2}}, 5, 3));
    CHECK_FALSE(is_r_injective({{0}, {2}}, 4, 3));  // 2*0 = 2*2 = 0 mod 4
    CHECK(is_r_injective({{0}, {1}}, 4, 3));
    CHECK(is_r_injective({{0}, {1}, {2}}, 3, 3));   // gcd(2,3) = 1
}

TEST_CASE("check_rank_bound preconditions and trivial cases") {
    const Rational third(1, 3);
    const Ambient amb(3, 1);
    SUBCASE("P = 0 has rank 0") {
        const auto r = check_rank_bound(box_points(3, 1), AlgebraElement::zero(amb), third, 3);
        CHECK(r.rank == 0);
        CHECK(r.holds);
        CHECK(r.bound == 2);
    }
    SUBCASE("support outside M_{2 alpha} rejected") {
        const AlgebraElement p = AlgebraElement::monomial(amb, {2});  // weight 1 > 2/3
        CHECK_THROWS_AS(check_rank_bound(box_points(3, 1), p, third, 3), std::domain_error);
    }
    SUBCASE("r-injectivity violation rejected") {
        const Ambient amb4(4, 1);
        const AlgebraElement p = AlgebraElement::one(amb4);
        CHECK_THROWS_AS(check_rank_bound({{0}, {2}}, p, third, 3), std::domain_error);
    }
}

// Without the progression-vanishing hypothesis the rank bound is not a
// theorem: this admissible pair exceeds it, which is why the randomized
// suites sample hypothesis-satisfying instances.
TEST_CASE("rank can exceed the bound without the vanishing hypothesis") {
    const Ambient amb(3, 1);
    AlgebraElement p(amb);  // P = 1 + X, support = M_{2/3}
    p.add_term({0}, 1);
    p.add_term({1}, 1);
    const auto r = check_rank_bound(box_points(3, 1), p, Rational(1, 3), 3);
    CHECK(r.rank == 3);
    CHECK(r.bound == 2);
    CHECK_FALSE(r.holds);
}

// Exhaustive statement-level verification at tiny scale: over every
// r-injective A and every coefficient vector on M_{2/3} satisfying the
// vanishing hypothesis, the matrix is diagonal, the rank bound holds, and
// |A| > bound forces a vanishing coefficient on A.
TEST_CASE("vanishing-hypothesis instances verified exhaustively") {
    struct Config {
        int q, k;
    };
    for (const auto& [q, k] : std::vector<Config>{{3, 3}, {4, 3}, {5, 3}, {5, 4}}) {
        const Ambient amb(q, 1);
        const Rational third(1, 3);
        const auto pts = box_points(q, 1);
        std::vector<ExpVec> support_box;
        for (const auto& e : pts)
            if (in_m_set(e, third * 2, q, 1)) support_box.push_back(e);
        const BigInt bound =
            big_pow(BigInt(2), static_cast<unsigned>(k - 2)) * m_set_size(MSetSpec{1, 3, q, 1});

        long long tested = 0;
        for (std::uint32_t subset = 1; subset < (1u << q); ++subset) {
            std::vector<ExpVec> a_set;
            for (int i = 0; i < q; ++i)
                if (subset >> i & 1u) a_set.push_back(pts[i]);
            if (!is_r_injective(a_set, q, k)) continue;

            // every coefficient vector over F_p on the support box
            const int p = amb.p;
            long long combos = 1;
            for (size_t i = 0; i < support_box.size(); ++i) combos *= p;
            for (long long code = 0; code < combos; ++code) {
                AlgebraElement poly(amb);
                long long rest = code;
                for (const auto& e : support_box) {
                    const int c = static_cast<int>(rest % p);
                    rest /= p;
                    if (c) poly.add_term(e, c);
                }
                // vanishing hypothesis: some factor vanishes for every pair
                bool vanishing = true;
                for (const auto& a : a_set) {
                    for (const auto& b : a_set) {
                        if (a == b) continue;
                        bool some_zero = false;
                        for (const auto& pt : progression_points(a, b, k, q))
                            if (poly.coeff_at(pt) == 0) some_zero = true;
                        if (!some_zero) vanishing = false;
                    }
                    if (!vanishing) break;
                }
                if (!vanishing) continue;
                ++tested;
                const auto r = check_rank_bound(a_set, poly, third, k);
                CHECK(r.holds);
                if (BigInt(static_cast<long long>(a_set.size())) > bound) {
                    bool some_vanishes = false;
                    for (const auto& a : a_set)
                        if (poly.coeff_at(a) == 0) some_vanishes = true;
                    CHECK(some_vanishes);
                }
            }
        }
        CAPTURE(q);
        CAPTURE(k);
        CHECK(tested > 0);
    }
}

TEST_CASE("verify_vanishing") {
    CHECK(verify_vanishing({{0}}, {{0}}, 3, 3));  // vacuous
    CHECK(verify_vanishing({{0}, {1}}, {{0}, {1}}, 3, 3));
    CHECK_FALSE(verify_vanishing({{0}, {1}, {2}}, {{0}, {1}, {2}}, 3, 3));
    CHECK_THROWS_AS(verify_vanishing({{0}, {1}}, {{0}}, 3, 3), std::invalid_argument);
}

TEST_CASE("kernel_reduce") {
    SUBCASE("d = 1 is a lexicographic translation") {
        const CosetReduction r = kernel_reduce({{1}, {2}}, 9, 1, 3);  // gcd(2,9) = 1
        CHECK(r.d == 1);
        REQUIRE(r.cosets.size() == 1);
        CHECK(r.cosets[0].representative == ExpVec{1});
        CHECK(r.cosets[0].reduced == std::vector<ExpVec>{{0}, {1}});
    }
    SUBCASE("q=4 k=3 splits {0},{1} into singleton classes over Z_2") {
        const CosetReduction r = kernel_reduce({{0}, {1}}, 4, 1, 3);
        CHECK(r.d == 2);
        REQUIRE(r.cosets.size() == 2);
        for (const auto& coset : r.cosets) {
            CHECK(coset.reduced == std::vector<ExpVec>{{0}});
            CHECK(lift_coset(coset, r.d, 4) == std::vector<ExpVec>{coset.representative});
        }
    }
    SUBCASE("lift recovers the class exactly") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 50; ++trial) {
            std::set<ExpVec> sample;
            for (int i = 0; i < 6; ++i) sample.insert({static_cast<int>(rng() % 8)});
            const std::vector<ExpVec> a_set(sample.begin(), sample.end());
            const CosetReduction r = kernel_reduce(a_set, 8, 1, 3);  // d = 2
            std::set<ExpVec> rebuilt;
            size_t total = 0;
            for (const auto& coset : r.cosets) {
                for (const auto& a : lift_coset(coset, r.d, 8)) rebuilt.insert(a);
                total += coset.reduced.size();
            }
            CHECK(total == a_set.size());
            CHECK(rebuilt == sample);
        }
    }
}

TEST_CASE("verify_key_lemma instances") {
    struct Instance {
        int q, n, k;
    };
    const std::vector<Instance> instances = {{3, 1, 3}, {3, 2, 3}, {4, 1, 3}, {5, 1, 3},
                                             {4, 1, 4}, {5, 1, 4}, {7, 1, 5}, {9, 1, 3}};
    for (const auto& [q, n, k] : instances) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(k);
        const KeyLemmaReport r = verify_key_lemma(q, n, k);
        CHECK(r.ok);
        CHECK(r.bound_holds);
        for (const auto& coset : r.cosets) {
            CHECK(coset.lift_sound);
            CHECK(coset.ap_free);
            CHECK(coset.r_injective);
            CHECK(coset.dimension_count);
            CHECK(coset.vanishing);
            CHECK(coset.diagonal_unit);
            CHECK(coset.rank_ok);
        }
    }
    // frozen expected maxima and bounds for three documented cases
    const KeyLemmaReport a = verify_key_lemma(3, 1, 3);
    CHECK(a.max_size == 2);
    CHECK(a.bound == 3);
    const KeyLemmaReport b = verify_key_lemma(3, 2, 3);
    CHECK(b.max_size == 4);
    CHECK(b.bound == 9);
    const KeyLemmaReport c = verify_key_lemma(4, 1, 3);
    CHECK(c.max_size == 2);
    CHECK(c.bound == 6);
    CHECK(c.d == 2);
}

TEST_CASE("verify_key_lemma preconditions") {
    CHECK_THROWS_AS(verify_key_lemma(6, 1, 3), std::domain_error);  // not a prime power
    CHECK_THROWS_AS(verify_key_lemma(3, 1, 4), std::domain_error);  // q < k
    SearchBudget small;
    small.max_points = 4;
    CHECK_THROWS_AS(verify_key_lemma(3, 2, 3, small), std::domain_error);  // scale guard
}
