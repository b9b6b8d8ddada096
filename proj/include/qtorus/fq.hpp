#pragma once
/// @file fq.hpp
/// @brief Elements of the coefficient field K: Q(q) in generic mode,
///        Q[q]/(Phi_d(q)) in root-of-unity mode.
///
/// Both cases share one representation num/den of Laurent polynomials over Z:
///   - generic: den is an ordinary polynomial with low() = 0 and positive
///     leading coefficient; the fraction is fully reduced (polynomial gcd 1 and
///     coprime integer contents). num may have negative exponents.
///   - root: num is reduced mod Phi_d (exponents in [0, deg Phi_d)); den is a
///     positive integer constant coprime to content(num).
/// Zero is num = 0, den = 1 in both modes. Structural equality of canonical
/// forms is field equality.

#include "qtorus/lpoly.hpp"
#include "qtorus/qmode.hpp"

#include <string>

namespace qtorus {

struct Fq {
    LPoly num;
    LPoly den = LPoly::one();

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }

    friend bool operator==(const Fq& a, const Fq& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Fq& a, const Fq& b) {
        if (auto c = a.num <=> b.num; c != 0) return c;
        return a.den <=> b.den;
    }
};

/// Integer constant.
Fq fq_from_int(Coef v);
/// Rational constant n/d (d != 0).
Fq fq_from_rat(Coef n, Coef d);
/// q^k as a field element (reduced in root mode).
Fq fq_q_pow(QMode mode, int64_t k);
/// Canonicalize an arbitrary num/den pair (reducing mod Phi_d in root mode).
Fq fq_make(QMode mode, LPoly num, LPoly den);

Fq fq_neg(const Fq& a);
Fq fq_add(QMode mode, const Fq& a, const Fq& b);
Fq fq_sub(QMode mode, const Fq& a, const Fq& b);
Fq fq_mul(QMode mode, const Fq& a, const Fq& b);
/// Multiplicative inverse; throws DivisionByNonUnitError on zero.
Fq fq_inv(QMode mode, const Fq& a);
Fq fq_div(QMode mode, const Fq& a, const Fq& b);
/// Multiply by the monomial c*q^e (fast path; reduced in root mode).
Fq fq_scale(QMode mode, const Fq& a, int32_t e, Coef c);

/// Render as "poly" or "(num)/(den)".
std::string fq_str(const Fq& a);

/// Parse an expression in q: integers, 'q', '^' powers (integer, possibly
/// negative), '*', '/', '+', '-', parentheses. Examples: "q^-2 + 1",
/// "(1/2)*(q+1)/(q-1)". Throws ParseError on malformed input and
/// DivisionByNonUnitError on division by zero.
Fq fq_parse(QMode mode, const std::string& s);

} // namespace qtorus
