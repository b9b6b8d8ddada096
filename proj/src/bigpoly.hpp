#pragma once
// Internal helpers: the two operations whose intermediate coefficients can
// exceed 128 bits (polynomial gcd and residue inversion) run on arbitrary-
// precision integers here, then narrow back to the library's Coef type.
// Not part of the public API.

#include "qtorus/lpoly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace qtorus::detail {

using BigInt = boost::multiprecision::cpp_int;

// Dense ordinary polynomial c[0] + c[1] q + ... (no Laurent offset).
using BigVec = std::vector<BigInt>;

inline BigVec to_big(const LPoly& p) {
    // caller guarantees p.low() >= 0
    BigVec v(p.is_zero() ? 0 : size_t(p.degree()) + 1);
    for (const PTerm& t : p.terms()) v[size_t(t.exp)] = BigInt(int64_t(t.coef >> 64)) * (BigInt(1) << 64) + BigInt(uint64_t(t.coef));
    return v;
}

inline Coef narrow(const BigInt& v) {
    static const BigInt hi = (BigInt(1) << 127) - 1;
    if (v < -hi || v > hi) throw OverflowError("coefficient exceeds 128 bits after reduction");
    bool neg = v < 0;
    BigInt a = neg ? -v : v;
    Coef r = (Coef(uint64_t(a >> 64)) << 64) | Coef(uint64_t(a & BigInt(UINT64_MAX)));
    return neg ? -r : r;
}

inline LPoly from_big(const BigVec& v, int32_t shift) {
    LPoly p;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) p = p + LPoly::monomial(int32_t(i) + shift, narrow(v[i]));
    return p;
}

inline void trim(BigVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline BigInt content(const BigVec& v) {
    BigInt g = 0;
    for (const BigInt& c : v) {
        g = boost::multiprecision::gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

inline void div_content(BigVec& v, const BigInt& g) {
    if (g == 0 || g == 1) return;
    for (BigInt& c : v) c /= g;
}

// Primitive part with positive leading coefficient.
inline void make_primitive(BigVec& v) {
    trim(v);
    if (v.empty()) return;
    BigInt g = content(v);
    if (v.back() < 0) g = -g;
    div_content(v, g);
}

// gcd of two ordinary polynomials (primitive Euclid over BigInt).
inline BigVec big_gcd(BigVec a, BigVec b) {
    make_primitive(a);
    make_primitive(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    while (!b.empty()) {
        if (a.size() < b.size()) std::swap(a, b);
        // pseudo-remainder of a by b
        BigInt lcb = b.back();
        BigVec r = a;
        while (!r.empty() && r.size() >= b.size()) {
            size_t e = r.size() - b.size();
            BigInt lcr = r.back();
            for (size_t i = 0; i < r.size(); ++i) r[i] *= lcb;
            for (size_t i = 0; i < b.size(); ++i) r[i + e] -= lcr * b[i];
            trim(r);
        }
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    make_primitive(a);
    return a;
}

// Inverse of the residue `num` modulo the monic irreducible `phi`, via the
// extended Euclidean algorithm over arbitrary-precision rationals. Returns
// (u, d) with u/d * num == 1 (mod phi). Throws DivisionByNonUnitError when num
// and phi share a factor (only possible for num == 0 mod phi).
inline std::pair<LPoly, BigInt> residue_inverse(const LPoly& num, const LPoly& phi) {
    using BigRat = boost::multiprecision::cpp_rational;
    using RatVec = std::vector<BigRat>;
    auto to_rat = [](const LPoly& p) {
        BigVec b = to_big(p);
        RatVec v(b.size());
        for (size_t i = 0; i < b.size(); ++i) v[i] = BigRat(b[i]);
        return v;
    };
    auto rtrim = [](RatVec& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    RatVec r0 = to_rat(phi), r1 = to_rat(num);
    RatVec u0, u1{BigRat(1)};
    rtrim(r1);
    while (r1.size() > 1) {
        RatVec r = r0, u = u0;
        while (r.size() >= r1.size()) {
            size_t e = r.size() - r1.size();
            BigRat c = r.back() / r1.back();
            for (size_t i = 0; i < r1.size(); ++i) r[i + e] -= c * r1[i];
            r.pop_back(); // leading term cancels exactly
            rtrim(r);
            if (u.size() < u1.size() + e) u.resize(u1.size() + e);
            for (size_t i = 0; i < u1.size(); ++i) u[i + e] -= c * u1[i];
            rtrim(u);
        }
        r0 = std::move(r1); u0 = std::move(u1);
        r1 = std::move(r); u1 = std::move(u);
    }
    if (r1.empty()) throw DivisionByNonUnitError("residue shares a factor with the modulus");
    BigRat c = r1[0];
    // result = u1 / c; clear denominators to an integer polynomial over a
    // single denominator d.
    BigInt den = 1;
    for (BigRat& x : u1) {
        x /= c;
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    }
    BigVec out(u1.size());
    for (size_t i = 0; i < u1.size(); ++i)
        out[i] = boost::multiprecision::numerator(u1[i]) *
                 (den / boost::multiprecision::denominator(u1[i]));
    BigInt g = content(out);
    if (g != 0) g = boost::multiprecision::gcd(g, den);
    if (g > 1) { div_content(out, g); den /= g; }
    return {from_big(out, 0), den};
}

} // namespace qtorus::detail
