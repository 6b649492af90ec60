#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace progfree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<long long>;

/// lcm(2, 3, ..., t-1) as an exact integer. Throws std::domain_error for t < 3.
BigInt lcm_range(int t);

/// q = p^e with p prime?  On success stores p and e (e >= 1).
bool is_prime_power(int q, int* p_out = nullptr, int* e_out = nullptr);

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt result = 1;
    while (exp) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

/// Strict comparison against a published constant with a 16-ulp evaluation
/// guard: true iff value plus `ulps` upward steps is still below limit.
inline bool below_with_ulps(double value, double limit, int ulps = 16) {
    double v = value;
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, std::numeric_limits<double>::infinity());
    return v < limit;
}

/// Parses "num/den" (or a bare integer "num") into an exact rational.
Rational parse_rational(const std::string& text);

inline std::string rational_to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace progfree
