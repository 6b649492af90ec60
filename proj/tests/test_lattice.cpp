#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "progfree/bound.hpp"
#include "progfree/lattice.hpp"
#include "progfree/verification.hpp"

using namespace progfree;

TEST_CASE("m_set_size small cases") {
    CHECK(m_set_size(MSetSpec{1, 3, 2, 3}) == 4);   // sum <= 1 in {0,1}^3
    CHECK(m_set_size(MSetSpec{1, 2, 3, 2}) == 6);   // pairs in [0,3)^2 with sum <= 2
    CHECK(m_set_size(MSetSpec{1, 3, 4, 4}) == 66);  // frozen from the enumeration oracle
    CHECK(verification::enumerate_m_set_size(1, 3, 4, 4) == 66);
}

TEST_CASE("complement sizes") {
    CHECK(m_complement_size(MSetSpec{1, 1, 5, 3}) == 0);   // alpha = 1: everything inside
    CHECK(m_complement_size(MSetSpec{0, 1, 3, 2}) == 8);   // alpha = 0: only the origin inside
    CHECK(m_complement_size(MSetSpec{1, 3, 2, 3}) == 4);   // 8 - 4
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(m_set_size(MSetSpec{1, 3, 1, 2}), std::domain_error);   // q < 2
    CHECK_THROWS_AS(m_set_size(MSetSpec{1, 3, 3, 0}), std::domain_error);   // n < 1
    CHECK_THROWS_AS(m_set_size(MSetSpec{4, 3, 3, 2}), std::domain_error);   // alpha > 1
    CHECK_THROWS_AS(m_set_size(MSetSpec{-1, 3, 3, 2}), std::domain_error);  // alpha < 0
}

TEST_CASE("DP equals exhaustive enumeration") {
    const std::vector<std::pair<long long, long long>> alphas = {{0, 1}, {1, 4}, {1, 3},
                                                                 {1, 2}, {2, 3}, {1, 1}};
    for (int q = 2; q <= 6; ++q)
        for (int n = 1; n <= 6; ++n)
            for (const auto& [num, den] : alphas) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(num);
                CHECK(m_set_size(MSetSpec{num, den, q, n}) ==
                      verification::enumerate_m_set_size(num, den, q, n));
            }
}

TEST_CASE("monotone in alpha") {
    const std::vector<std::pair<long long, long long>> alphas = {{0, 1}, {1, 4}, {1, 3},
                                                                 {1, 2}, {2, 3}, {3, 4}, {1, 1}};
    for (int q : {2, 3, 5}) {
        for (int n : {1, 3, 5}) {
            BigInt prev = -1;
            for (const auto& [num, den] : alphas) {
                const BigInt size = m_set_size(MSetSpec{num, den, q, n});
                CHECK(size >= prev);
                prev = size;
            }
        }
    }
}

TEST_CASE("complement identity with integrality guard") {
    // threshold 2/3 not integral: identity must hold
    {
        const ComplementCheck c = complement_identity_check(MSetSpec{1, 3, 3, 1});
        CHECK_FALSE(c.boundary_integral);
        CHECK(c.holds);
        CHECK(c.complement_size == 2);
    }
    // threshold integral: identity fails by the boundary shell here
    {
        const ComplementCheck c = complement_identity_check(MSetSpec{1, 3, 4, 2});
        CHECK(c.boundary_integral);
        CHECK_FALSE(c.holds);
        CHECK(c.complement_size == 10);  // frozen by enumeration
        CHECK(c.mirror_size == 13);
    }
    // symmetric integral case
    {
        const ComplementCheck c = complement_identity_check(MSetSpec{1, 2, 2, 2});
        CHECK(c.boundary_integral);
        CHECK(c.complement_size == 1);
        CHECK(c.mirror_size == 3);
    }
}

TEST_CASE("identity holds whenever the threshold is non-integral") {
    const std::vector<std::pair<long long, long long>> alphas = {{1, 4}, {1, 3}, {1, 2},
                                                                 {2, 3}, {3, 4}, {2, 5}};
    for (int q = 2; q <= 7; ++q)
        for (int n = 1; n <= 6; ++n)
            for (const auto& [num, den] : alphas) {
                const MSetSpec spec{num, den, q, n};
                const ComplementCheck c = complement_identity_check(spec);
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(num);
                CAPTURE(den);
                if (!c.boundary_integral) CHECK(c.holds);
            }
}

TEST_CASE("row symmetry: size(alpha) + strict(1-alpha) = q^n") {
    const std::vector<std::pair<long long, long long>> alphas = {{0, 1}, {1, 4}, {1, 3},
                                                                 {1, 2}, {2, 3}, {1, 1}};
    for (int q = 2; q <= 6; ++q)
        for (int n = 1; n <= 5; ++n)
            for (const auto& [num, den] : alphas) {
                const MSetSpec spec{num, den, q, n};
                const BigInt total = big_pow(BigInt(q), static_cast<unsigned>(n));
                CHECK(m_set_size(spec) + m_set_size_strict(spec.complement_alpha()) == total);
            }
}

TEST_CASE("count bound against q*A(q) upper bounds") {
    CHECK(chernoff_upper_check(2, 1, 0.94495).lhs == 1);
    CHECK(chernoff_upper_check(2, 1, 0.94495).holds);
    {
        const ChernoffCheck c = chernoff_upper_check(2, 4, 0.94495);
        CHECK(c.lhs == 5);  // sum <= 4/3 means sum <= 1
        CHECK(c.holds);     // 5 <= (1.8899)^4 = 12.76
    }
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        const double a_upper = minimize_a(q).a_value;
        for (int n = 1; n <= 10; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            CHECK(chernoff_upper_check(q, n, a_upper).holds);
        }
    }
}
