#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace progfree {

// An exponent/point vector in [0,q)^n.  Doubles as a group element of Z_q^n
// (arithmetic mod q) and as a monomial exponent (arithmetic over Z).  The two
// additions are distinct operations and must never be conflated; they carry
// different names below.
using ExpVec = std::vector<int>;

/// Group addition in Z_q^n: componentwise mod q.
inline ExpVec add_points_mod(const ExpVec& a, const ExpVec& b, int q) {
    if (a.size() != b.size()) throw std::invalid_argument("point dimension mismatch");
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<int>((a[i] + b[i]) % q);
    return r;
}

/// Group scaling in Z_q^n: r*a componentwise mod q (r may be negative).
inline ExpVec scale_point_mod(long long r, const ExpVec& a, int q) {
    ExpVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        long long v = (r * a[i]) % q;
        if (v < 0) v += q;
        out[i] = static_cast<int>(v);
    }
    return out;
}

/// Exponent addition over Z (no reduction).  Entries may reach or exceed q,
/// which signals truncation-to-zero of the corresponding product monomial.
inline ExpVec add_exponents(const ExpVec& a, const ExpVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent dimension mismatch");
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

/// True iff some entry is >= q (the monomial truncates to zero).
inline bool exceeds_ambient(const ExpVec& e, int q) {
    for (int v : e)
        if (v >= q) return true;
    return false;
}

inline bool is_zero_vec(const ExpVec& e) {
    for (int v : e)
        if (v != 0) return false;
    return true;
}

/// Base-q integer code of a point in [0, q^n).
inline std::uint64_t encode_point(const ExpVec& p, int q) {
    std::uint64_t code = 0;
    for (size_t i = p.size(); i-- > 0;) code = code * static_cast<std::uint64_t>(q) + p[i];
    return code;
}

inline ExpVec decode_point(std::uint64_t code, int q, int n) {
    ExpVec p(n);
    for (int i = 0; i < n; ++i) {
        p[i] = static_cast<int>(code % q);
        code /= q;
    }
    return p;
}

}  // namespace progfree
