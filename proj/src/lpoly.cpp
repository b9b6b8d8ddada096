#include "qtorus/lpoly.hpp"

#include "bigpoly.hpp"

#include <algorithm>
#include <map>

namespace qtorus {

std::pair<LPoly, LPoly> LPoly::divmod_unit(const LPoly& d) const {
    if (d.is_zero()) throw DivisionByNonUnitError("polynomial division by zero");
    if (d.low() < 0 || (!is_zero() && low() < 0))
        throw Error("divmod_unit requires ordinary polynomials");
    Coef lc = d.leading();
    if (lc != 1 && lc != -1)
        throw Error("divmod_unit requires a unit leading coefficient");
    LPoly q, r = *this;
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int32_t e = r.degree() - d.degree();
        Coef c = lc == 1 ? r.leading() : chk_neg(r.leading());
        q = q + LPoly::monomial(e, c);
        r = r - d.scaled(e, c);
    }
    return {q, r};
}

LPoly LPoly::divexact(const LPoly& d) const {
    if (d.is_zero()) throw DivisionByNonUnitError("exact division by zero");
    if (is_zero()) return {};
    // Peel off the monomial parts so both operands become ordinary polynomials.
    int32_t shift = low() - d.low();
    LPoly a = shifted(-low());
    LPoly b = d.shifted(-d.low());
    if (b.is_one()) return a.shifted(shift);
    LPoly q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        if (r.leading() % b.leading() != 0)
            throw Error("divexact: inexact leading division");
        int32_t e = r.degree() - b.degree();
        Coef c = r.leading() / b.leading();
        q = q + LPoly::monomial(e, c);
        r = r - b.scaled(e, c);
    }
    if (!r.is_zero()) throw Error("divexact: nonzero remainder");
    return q.shifted(shift);
}

LPoly LPoly::compose_power(int32_t k) const {
    std::map<int32_t, Coef> acc;
    for (const PTerm& t : terms_) {
        int64_t e = int64_t(t.exp) * int64_t(k);
        if (e < INT32_MIN || e > INT32_MAX) throw OverflowError("exponent overflow in compose_power");
        Coef& c = acc[int32_t(e)];
        c = chk_add(c, t.coef);
    }
    LPoly r;
    for (auto& [e, c] : acc)
        if (c != 0) r.terms_.push_back({e, c});
    return r;
}

std::string LPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    // Print highest power first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Coef c = it->coef;
        if (s.empty()) {
            if (c < 0) { s += "-"; c = -c; }
        } else {
            s += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        if (it->exp == 0) s += coef_str(c);
        else {
            if (c != 1) { s += coef_str(c); s += "*"; }
            s += "q";
            if (it->exp != 1) { s += "^"; s += std::to_string(it->exp); }
        }
    }
    return s;
}

LPoly lpoly_gcd(LPoly a, LPoly b) {
    if (!a.is_zero()) a = a.shifted(-a.low());
    if (!b.is_zero()) b = b.shifted(-b.low());
    // Intermediate coefficients in a primitive remainder sequence can be
    // resultant-sized, so this cold path runs on arbitrary precision.
    detail::BigVec g = detail::big_gcd(detail::to_big(a), detail::to_big(b));
    return detail::from_big(g, 0);
}

} // namespace qtorus
