#include "progfree/rank.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace progfree {

std::vector<ExpVec> progression_points(const ExpVec& a, const ExpVec& b, int k, int q) {
    if (k < 3) throw std::domain_error("progression_points requires k >= 3");
    std::vector<ExpVec> points;
    points.reserve(k - 2);
    for (int r = 2; r <= k - 1; ++r) {
        ExpVec pt(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            long long v = (static_cast<long long>(r) * a[i] - static_cast<long long>(r - 1) * b[i]) % q;
            if (v < 0) v += q;
            pt[i] = static_cast<int>(v);
        }
        points.push_back(std::move(pt));
    }
    return points;
}

ProgressionMatrix build_b_matrix(const std::vector<ExpVec>& a_set, const AlgebraElement& poly,
                                 int k) {
    if (k < 3) throw std::domain_error("build_b_matrix requires k >= 3");
    std::set<ExpVec> distinct(a_set.begin(), a_set.end());
    if (distinct.size() != a_set.size())
        throw std::invalid_argument("build_b_matrix requires distinct points");
    const Ambient& amb = poly.ambient();
    const size_t t = a_set.size();
    ProgressionMatrix matrix;
    matrix.source_a = a_set;
    matrix.k = k;
    matrix.p = amb.p;
    matrix.entries.assign(t, std::vector<int>(t, 0));
    for (size_t i = 0; i < t; ++i) {
        for (size_t j = 0; j < t; ++j) {
            int prod = 1;
            for (const ExpVec& pt : progression_points(a_set[i], a_set[j], k, amb.q)) {
                prod = (prod * poly.coeff_at(pt)) % amb.p;
                if (prod == 0) break;
            }
            matrix.entries[i][j] = prod;
        }
    }
    return matrix;
}

int rank_mod_p(const FpMatrix& m, int p) {
    if (p < 2) throw std::domain_error("rank_mod_p requires a prime modulus");
    FpMatrix a = m;
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    // modular inverse by Fermat (p prime)
    const auto inv = [p](long long x) {
        long long result = 1, base = ((x % p) + p) % p;
        for (int e = p - 2; e > 0; e >>= 1) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
        }
        return result;
    };
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && a[pivot][col] % p == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        const long long scale = inv(a[rank][col]);
        for (size_t j = col; j < cols; ++j)
            a[rank][j] = static_cast<int>(((a[rank][j] * scale) % p + p) % p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const long long factor = ((a[i][col] % p) + p) % p;
            if (factor == 0) continue;
            for (size_t j = col; j < cols; ++j)
                a[i][j] = static_cast<int>(((a[i][j] - factor * a[rank][j]) % p + p) % p);
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

bool is_r_injective(const std::vector<ExpVec>& s, int q, int k) {
    for (int r = 1; r <= k - 1; ++r) {
        std::set<ExpVec> images;
        for (const ExpVec& a : s)
            if (!images.insert(scale_point_mod(r, a, q)).second) return false;
    }
    return true;
}

RankBoundReport check_rank_bound(const std::vector<ExpVec>& a_set, const AlgebraElement& poly,
                                 const Rational& alpha, int k) {
    const Ambient& amb = poly.ambient();
    for (const auto& [lambda, c] : poly.coeffs()) {
        (void)c;
        if (!in_m_set(lambda, alpha * 2, amb.q, amb.n))
            throw std::domain_error("check_rank_bound requires support(P) inside M_{2 alpha}");
    }
    if (!is_r_injective(a_set, amb.q, k))
        throw std::domain_error("check_rank_bound requires r-injectivity of A");
    const ProgressionMatrix matrix = build_b_matrix(a_set, poly, k);
    RankBoundReport report;
    report.rank = a_set.empty() ? 0 : rank_mod_p(matrix.entries, amb.p);
    report.bound = big_pow(BigInt(2), static_cast<unsigned>(k - 2)) *
                   m_set_size(MSetSpec{alpha.numerator(), alpha.denominator(), amb.q, amb.n});
    report.holds = BigInt(report.rank) <= report.bound;
    return report;
}

bool verify_vanishing(const std::vector<ExpVec>& b1, const std::vector<ExpVec>& bfull, int k,
                      int q) {
    const std::set<ExpVec> full(bfull.begin(), bfull.end());
    const std::set<ExpVec> members(b1.begin(), b1.end());
    for (const ExpVec& x : b1)
        if (!full.count(x)) throw std::invalid_argument("verify_vanishing requires B1 inside Bfull");
    for (const ExpVec& a : b1) {
        for (const ExpVec& b : b1) {
            if (a == b) continue;
            bool some_outside = false;
            for (const ExpVec& pt : progression_points(a, b, k, q)) {
                if (!members.count(pt)) {
                    some_outside = true;
                    break;
                }
            }
            if (!some_outside) return false;
        }
    }
    return true;
}

CosetReduction kernel_reduce(const std::vector<ExpVec>& a_set, int q, int n, int k) {
    if (k < 3) throw std::domain_error("kernel_reduce requires k >= 3");
    if (q < k) throw std::domain_error("kernel_reduce requires q >= k");
    const BigInt d_big = boost::multiprecision::gcd(lcm_range(k), BigInt(q));
    const int d = d_big.convert_to<int>();

    CosetReduction reduction;
    reduction.d = d;
    reduction.q = q;
    reduction.n = n;
    reduction.k = k;

    std::map<ExpVec, std::vector<ExpVec>> classes;  // key: a mod d
    for (const ExpVec& a : a_set) {
        ExpVec key(a.size());
        for (size_t i = 0; i < a.size(); ++i) key[i] = a[i] % d;
        classes[key].push_back(a);
    }
    for (auto& [key, members] : classes) {
        (void)key;
        std::sort(members.begin(), members.end());
        CosetClass coset;
        coset.representative = members.front();
        coset.original_size = static_cast<int>(members.size());
        for (const ExpVec& a : members) {
            ExpVec b(a.size());
            for (size_t i = 0; i < a.size(); ++i) {
                const int diff = ((a[i] - coset.representative[i]) % q + q) % q;
                b[i] = diff / d;  // diff is a multiple of d by construction
            }
            coset.reduced.push_back(std::move(b));
        }
        std::sort(coset.reduced.begin(), coset.reduced.end());
        reduction.cosets.push_back(std::move(coset));
    }
    return reduction;
}

std::vector<ExpVec> lift_coset(const CosetClass& coset, int d, int q) {
    std::vector<ExpVec> lifted;
    lifted.reserve(coset.reduced.size());
    for (const ExpVec& b : coset.reduced) {
        ExpVec a(b.size());
        for (size_t i = 0; i < b.size(); ++i)
            a[i] = (d * b[i] + coset.representative[i]) % q;
        lifted.push_back(std::move(a));
    }
    std::sort(lifted.begin(), lifted.end());
    return lifted;
}

KeyLemmaReport verify_key_lemma(int q, int n, int k, const SearchBudget& budget, int threads) {
    if (!is_prime_power(q)) throw std::domain_error("verify_key_lemma requires a prime power q");
    if (q < k || k < 3) throw std::domain_error("verify_key_lemma requires q >= k >= 3");
    const double total = std::pow(q, n);
    if (total > budget.max_points)
        throw std::domain_error("instance exceeds the configured scale guard");

    KeyLemmaReport report;
    report.q = q;
    report.n = n;
    report.k = k;
    const BigInt d_big = boost::multiprecision::gcd(lcm_range(k), BigInt(q));
    report.d = d_big.convert_to<int>();
    report.q_reduced = q / report.d;
    report.reduced_below_k = (report.q_reduced < k);

    const SearchResult search = max_progression_free(q, n, k, Semantics::literal, budget, threads);
    report.max_size = search.max_size;
    report.witness = search.witness;

    const int qr = report.q_reduced;
    const BigInt m_third = qr >= 2 ? m_set_size(MSetSpec{1, 3, qr, n}) : BigInt(1);
    report.bound = (big_pow(BigInt(2), static_cast<unsigned>(k - 2)) + 1) *
                   big_pow(BigInt(report.d), static_cast<unsigned>(n)) * m_third;
    report.bound_holds = BigInt(report.max_size) <= report.bound;

    const CosetReduction reduction = kernel_reduce(report.witness, q, n, k);
    const BigInt rank_bound = big_pow(BigInt(2), static_cast<unsigned>(k - 2)) * m_third;
    const Rational one_third(1, 3);

    report.ok = report.bound_holds;
    for (const CosetClass& coset : reduction.cosets) {
        CosetCheck check;
        check.representative = coset.representative;
        check.size = coset.original_size;
        check.rank_bound = rank_bound;

        std::vector<ExpVec> original;
        for (const ExpVec& a : report.witness) {
            bool match = true;
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] % reduction.d != coset.representative[i] % reduction.d) match = false;
            if (match) original.push_back(a);
        }
        std::sort(original.begin(), original.end());
        check.lift_sound = (lift_coset(coset, reduction.d, q) == original);

        if (qr == 1) {
            // degenerate reduction (cannot occur for q >= k); classes are singletons
            check.ap_free = check.r_injective = check.dimension_count = true;
            check.vanishing = check.diagonal_unit = check.rank_ok = true;
        } else {
            check.ap_free =
                !contains_kap(coset.reduced, k, qr, n, Semantics::literal).has_value();
            check.r_injective = is_r_injective(coset.reduced, qr, k);

            std::vector<ExpVec> b1;
            for (const ExpVec& b : coset.reduced)
                if (in_m_set(b, Rational(2, 3), qr, n)) b1.push_back(b);
            check.dimension_count =
                BigInt(static_cast<long long>(b1.size())) >=
                BigInt(static_cast<long long>(coset.reduced.size())) - m_third;
            check.vanishing = verify_vanishing(b1, coset.reduced, k, qr);

            const Ambient amb(qr, n);
            const AlgebraElement poly = indicator_poly(amb, b1);
            const ProgressionMatrix matrix = build_b_matrix(b1, poly, k);
            check.diagonal_unit = true;
            for (size_t i = 0; i < b1.size(); ++i)
                for (size_t j = 0; j < b1.size(); ++j)
                    if (matrix.entries[i][j] != (i == j ? 1 : 0)) check.diagonal_unit = false;
            check.rank = b1.empty() ? 0 : rank_mod_p(matrix.entries, amb.p);
            check.rank_ok = BigInt(check.rank) <= rank_bound;
        }
        check.ok = check.lift_sound && check.ap_free && check.r_injective &&
                   check.dimension_count && check.vanishing && check.diagonal_unit &&
                   check.rank_ok;
        report.ok = report.ok && check.ok;
        report.cosets.push_back(std::move(check));
    }
    return report;
}

}  // namespace progfree
