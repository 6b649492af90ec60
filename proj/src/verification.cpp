#include "progfree/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "progfree/algebra.hpp"
#include "progfree/bound.hpp"
#include "progfree/lattice.hpp"
#include "progfree/rank.hpp"
#include "progfree/search.hpp"

namespace progfree::verification {

namespace {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::uint64_t below(std::uint64_t n) { return gen() % n; }  // deterministic trials
};

std::string vec_str(const ExpVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void add_check(SuiteReport& report, const std::string& name, bool passed,
               const std::string& detail = "") {
    report.checks.push_back(CheckResult{name, passed, detail});
}

ExpVec random_point(Rng& rng, int q, int n) {
    ExpVec p(n);
    for (int i = 0; i < n; ++i) p[i] = static_cast<int>(rng.below(q));
    return p;
}

AlgebraElement random_element(Rng& rng, const Ambient& amb, int max_terms) {
    AlgebraElement el(amb);
    const int terms = 1 + static_cast<int>(rng.below(max_terms));
    for (int t = 0; t < terms; ++t)
        el.add_term(random_point(rng, amb.q, amb.n), 1 + static_cast<int>(rng.below(amb.p - 1 ? amb.p - 1 : 1)));
    return el;
}

std::vector<ExpVec> all_points(int q, int n) {
    std::vector<ExpVec> pts;
    const std::uint64_t total = static_cast<std::uint64_t>(std::llround(std::pow(q, n)));
    pts.reserve(total);
    for (std::uint64_t c = 0; c < total; ++c) pts.push_back(decode_point(c, q, n));
    return pts;
}

std::vector<ExpVec> m_set_points(const Rational& alpha, int q, int n) {
    std::vector<ExpVec> pts;
    for (const ExpVec& p : all_points(q, n))
        if (in_m_set(p, alpha, q, n)) pts.push_back(p);
    return pts;
}

}  // namespace

BigInt enumerate_m_set_size(long long alpha_num, long long alpha_den, int q, int n) {
    const long long threshold_scaled = alpha_num * static_cast<long long>(n) * (q - 1);
    BigInt count = 0;
    ExpVec v(n, 0);
    for (;;) {
        long long s = 0;
        for (int x : v) s += x;
        if (s * alpha_den <= threshold_scaled) ++count;
        int i = 0;
        while (i < n && ++v[i] == q) v[i++] = 0;
        if (i == n) break;
    }
    return count;
}

int naive_max_progression_free(int q, int n, int k, bool distinct) {
    const int total = static_cast<int>(std::llround(std::pow(q, n)));
    if (total > 16) throw std::domain_error("naive oracle limited to q^n <= 16");
    const auto pts = all_points(q, n);
    int best = 0;
    for (std::uint32_t bits = 0; bits < (1u << total); ++bits) {
        const int size = std::popcount(bits);
        if (size <= best) continue;
        std::vector<ExpVec> s;
        for (int i = 0; i < total; ++i)
            if (bits >> i & 1u) s.push_back(pts[i]);
        const auto sem = distinct ? Semantics::distinct : Semantics::literal;
        if (!contains_kap(s, k, q, n, sem).has_value()) best = size;
    }
    return best;
}

int rank_mod_p_reversed(const std::vector<std::vector<int>>& m, int p) {
    // transpose, then eliminate scanning columns right-to-left with
    // bottom-up pivot search; row rank equals column rank
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<int>> a(cols, std::vector<int>(rows));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[j][i] = ((m[i][j] % p) + p) % p;
    const auto inv = [p](long long x) {
        long long r = 1, b = ((x % p) + p) % p;
        for (int e = p - 2; e > 0; e >>= 1) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
        }
        return r;
    };
    size_t rank = 0;
    std::vector<bool> used(cols, false);
    for (size_t col = rows; col-- > 0;) {
        size_t pivot = cols;
        for (size_t i = cols; i-- > 0;)
            if (!used[i] && a[i][col] != 0) pivot = i;
        if (pivot == cols) continue;
        used[pivot] = true;
        ++rank;
        const long long scale = inv(a[pivot][col]);
        for (size_t j = 0; j < rows; ++j) a[pivot][j] = static_cast<int>(a[pivot][j] * scale % p);
        for (size_t i = 0; i < cols; ++i) {
            if (i == pivot || a[i][col] == 0) continue;
            const long long f = a[i][col];
            for (size_t j = 0; j < rows; ++j)
                a[i][j] = static_cast<int>(((a[i][j] - f * a[pivot][j]) % p + p) % p);
        }
    }
    return static_cast<int>(rank);
}

SuiteReport verify_algebra(std::uint64_t seed) {
    SuiteReport report{"algebra", {}};
    const std::vector<std::pair<int, int>> ambients = {{2, 2}, {4, 2}, {3, 2}, {9, 2}, {5, 2}};
    // homomorphism: y_power(a) * y_power(b) == y_power(a+b mod q)
    for (const auto& [q, max_n] : ambients) {
        for (int n = 1; n <= max_n; ++n) {
            Rng rng(seed ^ (static_cast<std::uint64_t>(q) << 16) ^ n);
            const Ambient amb(q, n);
            bool ok = true;
            std::string detail;
            for (int trial = 0; trial < 200 && ok; ++trial) {
                const ExpVec a = random_point(rng, q, n);
                const ExpVec b = random_point(rng, q, n);
                if (!(y_power(amb, a) * y_power(amb, b) == y_power(amb, add_points_mod(a, b, q)))) {
                    ok = false;
                    detail = "failed at a=" + vec_str(a) + " b=" + vec_str(b);
                }
            }
            add_check(report, "homomorphism q=" + std::to_string(q) + " n=" + std::to_string(n),
                      ok, detail);
        }
    }
    // Frobenius truncation: (X_i + 1)^q == 1 in every ambient
    for (const auto& [q, max_n] : ambients) {
        const Ambient amb(q, std::min(max_n, 2));
        bool ok = true;
        for (int i = 0; i < amb.n && ok; ++i) {
            ExpVec e(amb.n, 0);
            e[i] = 1;
            AlgebraElement x_plus_1 = AlgebraElement::monomial(amb, e) + AlgebraElement::one(amb);
            AlgebraElement power = AlgebraElement::one(amb);
            for (int j = 0; j < q; ++j) power = power * x_plus_1;
            ok = (power == AlgebraElement::one(amb));
        }
        add_check(report, "frobenius truncation q=" + std::to_string(q), ok);
    }
    // ring laws on random triples
    {
        Rng rng(seed ^ 0xabcdefull);
        bool assoc = true, distrib = true;
        for (const auto& [q, max_n] : ambients) {
            const Ambient amb(q, std::min(max_n, 2));
            for (int trial = 0; trial < 25; ++trial) {
                const AlgebraElement f = random_element(rng, amb, 4);
                const AlgebraElement g = random_element(rng, amb, 4);
                const AlgebraElement h = random_element(rng, amb, 4);
                if (!((f * g) * h == f * (g * h))) assoc = false;
                if (!(f * (g + h) == f * g + f * h)) distrib = false;
            }
        }
        add_check(report, "associativity", assoc);
        add_check(report, "distributivity", distrib);
    }
    // decompose reconstruction: 100 random P per configuration, q in {3,4}, n <= 3
    {
        const Rational one_third(1, 3);
        for (int q : {3, 4}) {
            for (int n = 1; n <= 3; ++n) {
                Rng rng(seed ^ (static_cast<std::uint64_t>(q) << 24) ^ (n << 4));
                const Ambient amb(q, n);
                const auto support = m_set_points(Rational(2, 3), q, n);
                bool ok = true;
                for (int trial = 0; trial < 100 && ok; ++trial) {
                    AlgebraElement poly(amb);
                    for (const ExpVec& lambda : support)
                        if (rng.below(2) == 0)
                            poly.add_term(lambda, 1 + static_cast<int>(rng.below(amb.p - 1 ? amb.p - 1 : 1)));
                    AlgebraElement rebuilt(amb);
                    for (const auto& [mu, cofactor] : decompose_p(poly, one_third))
                        rebuilt = rebuilt + AlgebraElement::monomial(amb, mu) * cofactor;
                    ok = (rebuilt == poly);
                }
                add_check(report,
                          "decompose reconstruction q=" + std::to_string(q) + " n=" + std::to_string(n),
                          ok);
            }
        }
    }
    return report;
}

namespace {

// All mod-q progression-point indices generated by distinct pairs of a_set;
// zeroing P on these indices enforces the vanishing hypothesis.
std::set<ExpVec> progression_index_set(const std::vector<ExpVec>& a_set, int k, int q) {
    std::set<ExpVec> indices;
    for (const ExpVec& a : a_set)
        for (const ExpVec& b : a_set) {
            if (a == b) continue;
            for (const ExpVec& pt : progression_points(a, b, k, q)) indices.insert(pt);
        }
    return indices;
}

}  // namespace

SuiteReport verify_rank(std::uint64_t seed) {
    SuiteReport report{"rank", {}};
    struct Config {
        int q, k, n;
    };
    const std::vector<Config> configs = {{3, 3, 1}, {3, 3, 2}, {5, 3, 1}, {5, 4, 1}, {7, 5, 1}};
    const Rational one_third(1, 3);

    for (const auto& [q, k, n] : configs) {
        const Ambient amb(q, n);
        const auto points = all_points(q, n);
        const auto support_box = m_set_points(Rational(2, 3), q, n);
        Rng rng(seed ^ (static_cast<std::uint64_t>(q) << 20) ^ (static_cast<std::uint64_t>(k) << 10) ^ n);
        bool rank_ok = true, diag_ok = true;
        std::string detail;

        // 100 random instances satisfying the full hypothesis set: random
        // r-injective A, then P supported away from A's progression indices.
        for (int trial = 0; trial < 100 && rank_ok; ++trial) {
            std::vector<ExpVec> a_set;
            do {
                a_set.clear();
                for (const ExpVec& p : points)
                    if (rng.below(2) == 0) a_set.push_back(p);
            } while (a_set.empty() || !is_r_injective(a_set, q, k));
            const auto forbidden = progression_index_set(a_set, k, q);
            AlgebraElement poly(amb);
            for (const ExpVec& lambda : support_box) {
                if (forbidden.count(lambda)) continue;
                const int c = static_cast<int>(rng.below(amb.p));
                if (c) poly.add_term(lambda, c);
            }
            const RankBoundReport r = check_rank_bound(a_set, poly, one_third, k);
            if (!r.holds) {
                rank_ok = false;
                detail = "rank " + std::to_string(r.rank) + " > bound " + r.bound.str() +
                         " at |A|=" + std::to_string(a_set.size());
            }
        }

        // indicator-P instances drawn from AP-free sets: B must be diagonal
        // with unit diagonal, and the rank bound must hold as well
        int done = 0;
        for (int attempts = 0; done < 100 && diag_ok && attempts < 10000; ++attempts) {
            std::vector<ExpVec> full;
            for (const ExpVec& p : points) {
                std::vector<ExpVec> candidate = full;
                candidate.push_back(p);
                if (rng.below(2) == 0 &&
                    !contains_kap(candidate, k, q, n, Semantics::literal).has_value())
                    full = std::move(candidate);
            }
            std::vector<ExpVec> b1;
            for (const ExpVec& p : full)
                if (in_m_set(p, Rational(2, 3), q, n)) b1.push_back(p);
            if (b1.empty() || !is_r_injective(b1, q, k)) continue;
            ++done;
            const AlgebraElement poly = indicator_poly(amb, b1);
            const ProgressionMatrix matrix = build_b_matrix(b1, poly, k);
            for (size_t i = 0; i < b1.size() && diag_ok; ++i)
                for (size_t j = 0; j < b1.size() && diag_ok; ++j)
                    if (matrix.entries[i][j] != (i == j ? 1 : 0)) diag_ok = false;
            if (diag_ok && !check_rank_bound(b1, poly, one_third, k).holds) diag_ok = false;
        }
        const std::string label =
            "q=" + std::to_string(q) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
        add_check(report, "rank bound " + label, rank_ok, detail);
        add_check(report, "indicator diagonality " + label, diag_ok);
    }

    // two independent elimination orders agree
    {
        Rng rng(seed ^ 0x517ull);
        bool agree = true;
        for (int trial = 0; trial < 200 && agree; ++trial) {
            const int p = std::vector<int>{2, 3, 5, 7}[rng.below(4)];
            const int rows = 1 + static_cast<int>(rng.below(6));
            const int cols = 1 + static_cast<int>(rng.below(6));
            FpMatrix m(rows, std::vector<int>(cols));
            for (auto& row : m)
                for (int& x : row) x = static_cast<int>(rng.below(p));
            agree = (rank_mod_p(m, p) == rank_mod_p_reversed(m, p));
        }
        add_check(report, "rank agrees across elimination orders", agree);
    }
    return report;
}

SuiteReport verify_keylemma() {
    SuiteReport report{"keylemma", {}};
    struct Instance {
        int q, n, k;
    };
    const std::vector<Instance> instances = {{3, 1, 3}, {3, 2, 3}, {4, 1, 3}, {5, 1, 3},
                                             {4, 1, 4}, {5, 1, 4}, {7, 1, 5}, {9, 1, 3}};
    for (const auto& [q, n, k] : instances) {
        const KeyLemmaReport r = verify_key_lemma(q, n, k);
        std::ostringstream detail;
        detail << "max=" << r.max_size << " bound=" << r.bound << " d=" << r.d;
        add_check(report,
                  "key lemma q=" + std::to_string(q) + " n=" + std::to_string(n) +
                      " k=" + std::to_string(k),
                  r.ok, detail.str());
    }
    return report;
}

SuiteReport verify_chernoff() {
    SuiteReport report{"chernoff", {}};
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        const double a_upper = minimize_a(q).a_value;
        bool ok = true;
        std::string detail;
        for (int n = 1; n <= 10 && ok; ++n) {
            const ChernoffCheck check = chernoff_upper_check(q, n, a_upper);
            if (!check.holds) {
                ok = false;
                detail = "fails at n=" + std::to_string(n) + " count=" + check.lhs.str();
            }
        }
        add_check(report, "count bound q=" + std::to_string(q), ok, detail);
    }
    return report;
}

std::vector<SuiteReport> verify_all(std::uint64_t seed, bool inject_fault) {
    std::vector<SuiteReport> reports;
    reports.push_back(verify_algebra(seed));
    reports.push_back(verify_rank(seed));
    reports.push_back(verify_keylemma());
    reports.push_back(verify_chernoff());
    if (inject_fault) {
        SuiteReport fault{"fault-injection", {}};
        // deliberately corrupted expectation; exercises failure plumbing
        const double value = chernoff_ratio(2, 0.5);
        add_check(fault, "corrupted constant (deliberate)", value < 0.80,
                  "value=" + std::to_string(value) + " asserted < 0.80");
        reports.push_back(std::move(fault));
    }
    return reports;
}

std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed, bool inject_fault) {
    if (name == "all") return verify_all(seed, inject_fault);
    std::vector<SuiteReport> reports;
    if (name == "algebra")
        reports.push_back(verify_algebra(seed));
    else if (name == "rank")
        reports.push_back(verify_rank(seed));
    else if (name == "keylemma")
        reports.push_back(verify_keylemma());
    else if (name == "chernoff")
        reports.push_back(verify_chernoff());
    else
        throw std::invalid_argument("unknown suite: " + name);
    if (inject_fault && name != "all") {
        SuiteReport fault{"fault-injection", {}};
        const double value = chernoff_ratio(2, 0.5);
        fault.checks.push_back(CheckResult{"corrupted constant (deliberate)", value < 0.80,
                                           "value=" + std::to_string(value) + " asserted < 0.80"});
        reports.push_back(std::move(fault));
    }
    return reports;
}

}  // namespace progfree::verification
