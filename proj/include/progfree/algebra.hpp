#pragma once

#include <map>
#include <vector>

#include "progfree/numeric.hpp"
#include "progfree/points.hpp"

namespace progfree {

// The formal truncated algebra F_p[X_1..X_n] with X_i^q = 0, q = p^e.  The
// truncation identity (X+1)^q = X^q + 1 holds mod p exactly because q is a
// power of p; the constructor enforces that.

struct Ambient {
    int p = 0;
    int q = 0;
    int n = 0;
    int ext_degree = 0;  // q = p^ext_degree

    Ambient() = default;
    Ambient(int q_, int n_);

    bool operator==(const Ambient&) const = default;
};

class AlgebraElement {
public:
    explicit AlgebraElement(Ambient ambient) : ambient_(ambient) {}

    static AlgebraElement zero(const Ambient& ambient) { return AlgebraElement(ambient); }
    static AlgebraElement one(const Ambient& ambient);
    static AlgebraElement monomial(const Ambient& ambient, const ExpVec& e, int coeff = 1);

    const Ambient& ambient() const { return ambient_; }
    const std::map<ExpVec, int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    size_t support_size() const { return coeffs_.size(); }

    /// f(c): the coefficient at exponent c, zero if absent.
    int coeff_at(const ExpVec& c) const;

    /// Adds coeff at e, reducing mod p and dropping zeros; e must fit the box.
    void add_term(const ExpVec& e, int coeff);

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    /// Distributive product; exponents add over Z and any product monomial
    /// with a coordinate >= q is dropped (X_i^q = 0).
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

private:
    Ambient ambient_;
    std::map<ExpVec, int> coeffs_;  // nonzero residues mod p only
};

/// prod_i (X_i + 1)^{c_i}, fully expanded and truncated.  Satisfies
/// y_power(a) * y_power(b) == y_power(a + b mod q).
AlgebraElement y_power(const Ambient& ambient, const ExpVec& c);

/// sum_{b in B} X^b for a nonempty set of points.
AlgebraElement indicator_poly(const Ambient& ambient, const std::vector<ExpVec>& points);

/// sum lambda_i / (q-1) as an exact rational.
Rational weight(const ExpVec& lambda, int q);

/// weight(lambda) <= alpha * n, exact.
bool in_m_set(const ExpVec& lambda, const Rational& alpha, int q, int n);

/// Splits lambda (weight <= 2 alpha n) as mu + nu over Z with
/// weight(mu) <= alpha n, filling mu greedily one unit at a time in
/// coordinate order.  Deterministic; throws if lambda is too heavy.
std::pair<ExpVec, ExpVec> split_monomial(const ExpVec& lambda, const Rational& alpha, int q, int n);

/// Rewrites P (support in M_{2 alpha}) as sum over mu in M_alpha of
/// X^mu * cofactor(mu).  Products in the recomposition never truncate since
/// mu + nu = lambda stays inside the box.
std::vector<std::pair<ExpVec, AlgebraElement>> decompose_p(const AlgebraElement& poly,
                                                           const Rational& alpha);

}  // namespace progfree
