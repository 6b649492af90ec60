#include "progfree/algebra.hpp"

#include <algorithm>

namespace progfree {

Ambient::Ambient(int q_, int n_) : q(q_), n(n_) {
    if (n_ < 1) throw std::domain_error("ambient requires n >= 1");
    if (!is_prime_power(q_, &p, &ext_degree))
        throw std::domain_error("ambient requires q to be a prime power");
}

AlgebraElement AlgebraElement::one(const Ambient& ambient) {
    return monomial(ambient, ExpVec(ambient.n, 0));
}

AlgebraElement AlgebraElement::monomial(const Ambient& ambient, const ExpVec& e, int coeff) {
    AlgebraElement el(ambient);
    el.add_term(e, coeff);
    return el;
}

int AlgebraElement::coeff_at(const ExpVec& c) const {
    const auto it = coeffs_.find(c);
    return it == coeffs_.end() ? 0 : it->second;
}

void AlgebraElement::add_term(const ExpVec& e, int coeff) {
    if (static_cast<int>(e.size()) != ambient_.n)
        throw std::invalid_argument("exponent dimension does not match ambient");
    for (int v : e)
        if (v < 0 || v >= ambient_.q) throw std::invalid_argument("exponent outside [0,q)");
    int c = coeff % ambient_.p;
    if (c < 0) c += ambient_.p;
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
        it->second = (it->second + c) % ambient_.p;
        if (it->second == 0) coeffs_.erase(it);
    }
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.ambient_ == b.ambient_)) throw std::invalid_argument("ambient mismatch");
    AlgebraElement out = a;
    for (const auto& [e, c] : b.coeffs_) out.add_term(e, c);
    return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.ambient_ == b.ambient_)) throw std::invalid_argument("ambient mismatch");
    AlgebraElement out(a.ambient_);
    for (const auto& [e1, c1] : a.coeffs_) {
        for (const auto& [e2, c2] : b.coeffs_) {
            const ExpVec e = add_exponents(e1, e2);
            if (exceeds_ambient(e, a.ambient_.q)) continue;  // X_i^q = 0
            out.add_term(e, c1 * c2);
        }
    }
    return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.ambient_ == b.ambient_ && a.coeffs_ == b.coeffs_;
}

namespace {

// binomial(c, j) for c < q (small), exact then reduced by the caller
long long small_binomial(int c, int j) {
    long long r = 1;
    for (int i = 0; i < j; ++i) r = r * (c - i) / (i + 1);
    return r;
}

}  // namespace

AlgebraElement y_power(const Ambient& ambient, const ExpVec& c) {
    if (static_cast<int>(c.size()) != ambient.n)
        throw std::invalid_argument("point dimension does not match ambient");
    for (int v : c)
        if (v < 0 || v >= ambient.q) throw std::invalid_argument("point outside [0,q)^n");
    // coefficient of X^lambda in prod (X_i+1)^{c_i} is prod binomial(c_i, lambda_i)
    AlgebraElement out(ambient);
    ExpVec lambda(ambient.n, 0);
    // iterate the product of ranges [0..c_i]
    while (true) {
        long long coeff = 1;
        for (int i = 0; i < ambient.n && coeff != 0; ++i)
            coeff = (coeff * (small_binomial(c[i], lambda[i]) % ambient.p)) % ambient.p;
        if (coeff != 0) out.add_term(lambda, static_cast<int>(coeff));
        int i = 0;
        while (i < ambient.n) {
            if (lambda[i] < c[i]) {
                ++lambda[i];
                break;
            }
            lambda[i] = 0;
            ++i;
        }
        if (i == ambient.n) break;
    }
    return out;
}

AlgebraElement indicator_poly(const Ambient& ambient, const std::vector<ExpVec>& points) {
    if (points.empty()) throw std::invalid_argument("indicator_poly requires a nonempty set");
    AlgebraElement out(ambient);
    for (const auto& b : points) out.add_term(b, 1);
    return out;
}

Rational weight(const ExpVec& lambda, int q) {
    if (q < 2) throw std::domain_error("weight requires q >= 2");
    long long s = 0;
    for (int v : lambda) s += v;
    return Rational(s, q - 1);
}

bool in_m_set(const ExpVec& lambda, const Rational& alpha, int q, int n) {
    return weight(lambda, q) <= alpha * n;
}

std::pair<ExpVec, ExpVec> split_monomial(const ExpVec& lambda, const Rational& alpha, int q, int n) {
    if (!in_m_set(lambda, alpha * 2, q, n))
        throw std::domain_error("split_monomial requires weight(lambda) <= 2 alpha n");
    // weight(mu) <= alpha n  <=>  sum(mu) * den <= num * n * (q-1)
    const long long budget_scaled = alpha.numerator() * static_cast<long long>(n) * (q - 1);
    const long long den = alpha.denominator();
    ExpVec mu(lambda.size(), 0);
    long long sum = 0;
    for (size_t i = 0; i < lambda.size(); ++i) {
        for (int unit = 0; unit < lambda[i]; ++unit) {
            if ((sum + 1) * den > budget_scaled) goto done;
            ++mu[i];
            ++sum;
        }
    }
done:
    ExpVec nu(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) nu[i] = lambda[i] - mu[i];
    return {mu, nu};
}

std::vector<std::pair<ExpVec, AlgebraElement>> decompose_p(const AlgebraElement& poly,
                                                           const Rational& alpha) {
    const Ambient& amb = poly.ambient();
    std::map<ExpVec, AlgebraElement> buckets;
    for (const auto& [lambda, c] : poly.coeffs()) {
        if (!in_m_set(lambda, alpha * 2, amb.q, amb.n))
            throw std::domain_error("decompose_p requires support inside M_{2 alpha}");
        auto [mu, nu] = split_monomial(lambda, alpha, amb.q, amb.n);
        auto [it, inserted] = buckets.try_emplace(mu, amb);
        it->second.add_term(nu, c);
    }
    std::vector<std::pair<ExpVec, AlgebraElement>> out;
    out.reserve(buckets.size());
    for (auto& [mu, cof] : buckets) out.emplace_back(mu, std::move(cof));
    return out;
}

}  // namespace progfree
