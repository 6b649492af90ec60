#include "progfree/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "progfree/algebra.hpp"
#include "progfree/bound.hpp"
#include "progfree/lattice.hpp"
#include "progfree/rank.hpp"
#include "progfree/report_io.hpp"
#include "progfree/search.hpp"
#include "progfree/verification.hpp"

namespace progfree::selftest {

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
    std::vector<CriterionResult> results;

    template <typename F>
    void run(int index, const std::string& name, F&& body) {
        CriterionResult r;
        r.index = index;
        r.name = name;
        const auto start = Clock::now();
        try {
            std::ostringstream detail;
            r.passed = body(detail);
            r.detail = detail.str();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        results.push_back(std::move(r));
    }
};

bool criterion_a_table(std::ostringstream& detail) {
    bool ok = true;
    for (const auto& [m, reference] : reference_a_bounds()) {
        const RatioMinimum r = minimize_a(m);
        const bool below = below_with_ulps(r.a_value, reference);
        detail << "A(" << m << ")=" << format_double(r.a_value) << (below ? "<" : "!<")
               << reference << " ";
        ok = ok && below;
    }
    return ok;
}

bool criterion_closed_form(std::ostringstream& detail) {
    const double expected = 0.75 * std::cbrt(2.0);
    const double got = minimize_a(2).a_value;
    detail << "|" << format_double(got) << " - " << format_double(expected)
           << "| = " << format_double(std::fabs(got - expected));
    return std::fabs(got - expected) < 1e-9;
}

bool criterion_corollary_constants(std::ostringstream& detail) {
    bool ok = true;
    const double asym = asymptotic_constant(2.148);
    detail << "asym(2.148)=" << format_double(asym) << " ";
    ok = ok && below_with_ulps(asym, 0.8415);
    const BetaMajorant bm = beta_majorant(1.6, 13);
    detail << "majorant(1.6)=" << format_double(bm.majorant) << " ";
    ok = ok && below_with_ulps(bm.majorant, 0.92) && bm.exact <= bm.majorant;
    int worst_n = 0;
    double worst = 0.0;
    for (int m = 2; m <= 200; ++m) {
        if (!is_prime_power(m)) continue;
        const double a = minimize_a(m).a_value;
        if (a > worst) {
            worst = a;
            worst_n = m;
        }
        ok = ok && below_with_ulps(a, 0.945);
    }
    detail << "max A over prime powers [2,200] = " << format_double(worst) << " at N=" << worst_n;
    return ok;
}

bool criterion_chernoff(std::ostringstream& detail) {
    const auto report = verification::verify_chernoff();
    for (const auto& c : report.checks)
        if (!c.passed) detail << c.name << ": " << c.detail << " ";
    detail << report.checks.size() << " moduli checked, n=1..10 each";
    return report.all_passed();
}

bool criterion_counting_oracle(std::ostringstream& detail) {
    const std::vector<std::pair<long long, long long>> alphas = {{0, 1}, {1, 4}, {1, 3},
                                                                 {1, 2}, {2, 3}, {1, 1}};
    long long cases = 0;
    for (int q = 2; q <= 6; ++q)
        for (int n = 1; n <= 6; ++n)
            for (const auto& [num, den] : alphas) {
                const BigInt dp = m_set_size(MSetSpec{num, den, q, n});
                const BigInt oracle = verification::enumerate_m_set_size(num, den, q, n);
                if (dp != oracle) {
                    detail << "mismatch at alpha=" << num << "/" << den << " q=" << q
                           << " n=" << n;
                    return false;
                }
                ++cases;
            }
    detail << cases << " (alpha,q,n) cases, DP == enumeration";
    return true;
}

bool criterion_algebra_laws(std::ostringstream& detail) {
    const auto report = verification::verify_algebra(42);
    int hom = 0, frob = 0;
    for (const auto& c : report.checks) {
        if (!c.passed) {
            detail << c.name << ": " << c.detail << " ";
            return false;
        }
        if (c.name.rfind("homomorphism", 0) == 0) ++hom;
        if (c.name.rfind("frobenius", 0) == 0) ++frob;
    }
    detail << hom << " homomorphism configs (200 pairs each), " << frob
           << " truncation identities";
    return true;
}

bool criterion_decompose(std::ostringstream& detail) {
    const auto report = verification::verify_algebra(43);
    int configs = 0;
    for (const auto& c : report.checks) {
        if (c.name.rfind("decompose", 0) != 0) continue;
        ++configs;
        if (!c.passed) {
            detail << c.name << " failed";
            return false;
        }
    }
    detail << configs << " configurations, 100 random P each, exact reconstruction";
    return configs > 0;
}

bool criterion_rank_bound(std::ostringstream& detail) {
    const auto report = verification::verify_rank(42);
    for (const auto& c : report.checks) {
        if (!c.passed) {
            detail << c.name << ": " << c.detail;
            return false;
        }
    }
    detail << report.checks.size() << " checks (rank bound + diagonality per configuration)";
    return true;
}

bool criterion_key_lemma(std::ostringstream& detail) {
    const auto report = verification::verify_keylemma();
    for (const auto& c : report.checks) {
        if (!c.passed) {
            detail << c.name << ": " << c.detail;
            return false;
        }
    }
    detail << report.checks.size() << " instances, full reduce/vanish/rank chain";
    return true;
}

bool criterion_exact_values(std::ostringstream& detail, int threads) {
    struct Expected {
        int q, n, k, value;
    };
    const std::vector<Expected> table = {{3, 1, 3, 2}, {3, 2, 3, 4}, {3, 3, 3, 9},
                                         {5, 1, 3, 2}, {4, 1, 3, 2}, {2, 1, 3, 1}};
    for (const auto& [q, n, k, value] : table) {
        const SearchResult r = max_progression_free(q, n, k, Semantics::literal, {}, threads);
        if (r.max_size != value || !r.optimal) {
            detail << "r_" << k << "(Z_" << q << "^" << n << ") = " << r.max_size
                   << ", expected " << value;
            return false;
        }
        if (contains_kap(r.witness, k, q, n, Semantics::literal).has_value()) {
            detail << "witness re-check failed for q=" << q << " n=" << n;
            return false;
        }
        if (std::pow(q, n) <= 16 &&
            verification::naive_max_progression_free(q, n, k, false) != value) {
            detail << "naive oracle disagrees at q=" << q << " n=" << n;
            return false;
        }
    }
    // r_3(Z_3^n) <= floor(c_3(3)^n) for n = 1..3 (c < 2.7552)
    const BoundReport bound = progression_bound(3, 3);
    if (!below_with_ulps(bound.c_value, 2.7552)) {
        detail << "c_3(3) = " << format_double(bound.c_value) << " not below 2.7552";
        return false;
    }
    const int r_values[3] = {2, 4, 9};
    for (int n = 1; n <= 3; ++n) {
        const auto powed = std::pow(static_cast<long double>(bound.c_value), n);
        if (r_values[n - 1] > static_cast<long double>(std::floor(powed))) {
            detail << "r_3(Z_3^" << n << ") exceeds floor(c^n)";
            return false;
        }
    }
    // r_3(Z_5) = 2 <= 5*A(5)
    const double c5 = progression_bound(3, 5).c_value;
    if (!(2 <= std::floor(c5))) {
        detail << "r_3(Z_5) vs 5*A(5) failed";
        return false;
    }
    // subgroup reduction at q=4: r_3(Z_4) = 2 <= 2 * r_3(Z_2) = 2 (equality)
    const BoundConsistency reduction = bound_consistency(4, 1, 3, {}, threads);
    bool found = false;
    for (const auto& entry : reduction.reductions)
        if (entry.divisor == 2) found = (entry.rhs == 2 && entry.holds);
    if (!found) {
        detail << "q=4 reduction via N=2 failed";
        return false;
    }
    detail << "r_3(3^1..3)=2,4,9; r_3(Z_5)=2<=" << format_double(c5)
           << "; r_3(Z_4)=2<=2*r_3(Z_2)=2";
    return true;
}

bool criterion_tensor(std::ostringstream& detail, int threads) {
    const SearchResult r31 = max_progression_free(3, 1, 3, Semantics::literal, {}, threads);
    const SearchResult r32 = max_progression_free(3, 2, 3, Semantics::literal, {}, threads);
    const SearchResult r33 = max_progression_free(3, 3, 3, Semantics::literal, {}, threads);
    const auto p11 = product_set(r31.witness, r31.witness);
    const auto p12 = product_set(r31.witness, r32.witness);
    if (contains_kap(p11, 3, 3, 2, Semantics::literal).has_value()) {
        detail << "witness product (1,1) contains a progression";
        return false;
    }
    if (contains_kap(p12, 3, 3, 3, Semantics::literal).has_value()) {
        detail << "witness product (1,2) contains a progression";
        return false;
    }
    const bool super11 = r32.max_size >= r31.max_size * r31.max_size;
    const bool super12 = r33.max_size >= r31.max_size * r32.max_size;
    detail << "products AP-free; " << r32.max_size << ">=" << r31.max_size * r31.max_size
           << ", " << r33.max_size << ">=" << r31.max_size * r32.max_size;
    return super11 && super12;
}

bool criterion_determinism(std::ostringstream& detail) {
    // verify --suite all --seed 42 twice: identical machine-readable output
    const std::string verify_a = to_json(verification::verify_all(42), 42).dump();
    const std::string verify_b = to_json(verification::verify_all(42), 42).dump();
    if (verify_a != verify_b) {
        detail << "verify output not reproducible";
        return false;
    }
    // search at 1/2/8 threads: byte-identical machine-readable output
    std::string serialized[3];
    const int thread_counts[3] = {1, 2, 8};
    for (int i = 0; i < 3; ++i) {
        const SearchResult r =
            max_progression_free(3, 3, 3, Semantics::literal, {}, thread_counts[i]);
        SearchOutput output;
        output.q = 3;
        output.n = 3;
        output.k = 3;
        output.semantics = semantics_name(Semantics::literal);
        output.threads = 1;  // echo a fixed value; thread count must not leak into payload
        output.budget_nodes = r.budget_nodes;
        output.max_size = r.max_size;
        output.witness = r.witness;
        output.nodes_explored = r.nodes_explored;
        output.optimal = r.optimal;
        output.consistency = bound_consistency(3, 3, 3, {}, thread_counts[i]);
        serialized[i] = to_json(output).dump();
    }
    if (serialized[0] != serialized[1] || serialized[0] != serialized[2]) {
        detail << "search output differs across thread counts";
        return false;
    }
    detail << "verify(seed 42) reproducible; search identical at 1/2/8 threads";
    return true;
}

}  // namespace

std::vector<CriterionResult> run_selftest(int threads) {
    Runner runner;
    runner.run(1, "constant table strictly below references", criterion_a_table);
    runner.run(2, "closed-form anchor A(2) = (3/4)*2^(1/3)", criterion_closed_form);
    runner.run(3, "corollary constants", criterion_corollary_constants);
    runner.run(4, "count bound (exact vs log-domain)", criterion_chernoff);
    runner.run(5, "counting DP vs exhaustive enumeration", criterion_counting_oracle);
    runner.run(6, "group-algebra laws", criterion_algebra_laws);
    runner.run(7, "monomial-split decomposition reconstructs", criterion_decompose);
    runner.run(8, "rank bound and diagonality", criterion_rank_bound);
    runner.run(9, "coset-reduction lemma end-to-end", criterion_key_lemma);
    runner.run(10, "exact r-values vs per-dimension bound",
               [&](std::ostringstream& d) { return criterion_exact_values(d, threads); });
    runner.run(11, "tensor products stay progression-free",
               [&](std::ostringstream& d) { return criterion_tensor(d, threads); });
    runner.run(12, "deterministic outputs", criterion_determinism);
    return runner.results;
}

bool print_selftest(const std::vector<CriterionResult>& results) {
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
        all = all && r.passed;
        total += r.seconds;
    }
    std::printf("%s  (%.2fs total)\n", all ? "selftest passed" : "SELFTEST FAILED", total);
    return all;
}

}  // namespace progfree::selftest
