#include "progfree/lattice.hpp"

#include <cmath>
#include <vector>

namespace progfree {

void MSetSpec::validate() const {
    if (q < 2) throw std::domain_error("MSetSpec requires q >= 2");
    if (n < 1) throw std::domain_error("MSetSpec requires n >= 1");
    if (alpha_den < 1) throw std::domain_error("MSetSpec requires alpha_den >= 1");
    if (alpha_num < 0 || alpha_num > alpha_den)
        throw std::domain_error("MSetSpec requires 0 <= alpha <= 1");
}

bool MSetSpec::sum_in_set(long long s) const {
    return s * alpha_den <= alpha_num * static_cast<long long>(n) * (q - 1);
}

bool MSetSpec::threshold_integral() const {
    return (alpha_num * static_cast<long long>(n) * (q - 1)) % alpha_den == 0;
}

MSetSpec MSetSpec::complement_alpha() const {
    return MSetSpec{alpha_den - alpha_num, alpha_den, q, n};
}

namespace {

// count-by-sum array of [0,q)^n: entry s = #{lambda : sum lambda_i = s}
std::vector<BigInt> sum_distribution(int q, int n) {
    std::vector<BigInt> counts{BigInt(1)};
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> next(counts.size() + q - 1, BigInt(0));
        for (size_t s = 0; s < counts.size(); ++s) {
            if (counts[s] == 0) continue;
            for (int v = 0; v < q; ++v) next[s + v] += counts[s];
        }
        counts = std::move(next);
    }
    return counts;
}

}  // namespace

BigInt m_set_size(const MSetSpec& spec) {
    spec.validate();
    const auto counts = sum_distribution(spec.q, spec.n);
    BigInt total = 0;
    for (size_t s = 0; s < counts.size(); ++s)
        if (spec.sum_in_set(static_cast<long long>(s))) total += counts[s];
    return total;
}

BigInt m_set_size_strict(const MSetSpec& spec) {
    spec.validate();
    const auto counts = sum_distribution(spec.q, spec.n);
    const long long threshold_scaled = spec.alpha_num * static_cast<long long>(spec.n) * (spec.q - 1);
    BigInt total = 0;
    for (size_t s = 0; s < counts.size(); ++s)
        if (static_cast<long long>(s) * spec.alpha_den < threshold_scaled) total += counts[s];
    return total;
}

BigInt m_complement_size(const MSetSpec& spec) {
    spec.validate();
    return big_pow(BigInt(spec.q), static_cast<unsigned>(spec.n)) - m_set_size(spec);
}

ComplementCheck complement_identity_check(const MSetSpec& spec) {
    spec.validate();
    ComplementCheck check;
    check.boundary_integral = spec.threshold_integral();
    check.complement_size = m_complement_size(spec);
    check.mirror_size = m_set_size(spec.complement_alpha());
    check.holds = (check.complement_size == check.mirror_size);
    return check;
}

ChernoffCheck chernoff_upper_check(int q, int n, double a_upper) {
    ChernoffCheck check;
    check.lhs = m_set_size(MSetSpec{1, 3, q, n});
    check.rhs_log = n * std::log(q * a_upper);
    check.holds = std::log(check.lhs.convert_to<double>()) <= check.rhs_log;
    return check;
}

}  // namespace progfree
