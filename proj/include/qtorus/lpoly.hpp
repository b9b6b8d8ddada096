#pragma once
/// @file lpoly.hpp
/// @brief Sparse Laurent polynomials in one variable q with checked 128-bit coefficients.
///
/// Terms are kept sorted by exponent (ascending) with no zero coefficients, so
/// structural equality is semantic equality. Small polynomials (the common case:
/// one or two terms) live inline without heap allocation.

#include "qtorus/common.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace qtorus {

/// One monomial: coef * q^exp.
struct PTerm {
    int32_t exp;
    Coef coef;
    friend bool operator==(const PTerm&, const PTerm&) = default;
};

/// Laurent polynomial in q over the integers.
class LPoly {
public:
    using Terms = boost::container::small_vector<PTerm, 2>;

    LPoly() = default;
    /// Constant polynomial.
    static LPoly constant(Coef c) { return monomial(0, c); }
    /// c * q^e.
    static LPoly monomial(int32_t e, Coef c) {
        LPoly p;
        if (c != 0) p.terms_.push_back({e, c});
        return p;
    }
    static LPoly one() { return constant(1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coef == 1;
    }
    /// True when the polynomial is a single term c*q^e.
    bool is_monomial() const { return terms_.size() == 1; }
    /// True when the polynomial is an integer constant (including 0).
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0);
    }
    /// Constant term value (the coefficient of q^0).
    Coef constant_value() const {
        for (const PTerm& t : terms_)
            if (t.exp == 0) return t.coef;
        return 0;
    }

    /// Lowest exponent; requires nonzero.
    int32_t low() const { return terms_.front().exp; }
    /// Highest exponent; requires nonzero.
    int32_t degree() const { return terms_.back().exp; }
    /// Leading coefficient (of the highest exponent); requires nonzero.
    Coef leading() const { return terms_.back().coef; }

    const Terms& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    friend bool operator==(const LPoly& a, const LPoly& b) { return a.terms_ == b.terms_; }

    /// Total order (for canonical sorting of composite keys).
    friend std::strong_ordering operator<=>(const LPoly& a, const LPoly& b) {
        size_t n = a.terms_.size() < b.terms_.size() ? a.terms_.size() : b.terms_.size();
        for (size_t i = 0; i < n; ++i) {
            if (auto c = a.terms_[i].exp <=> b.terms_[i].exp; c != 0) return c;
            if (auto c = a.terms_[i].coef <=> b.terms_[i].coef; c != 0) return c;
        }
        return a.terms_.size() <=> b.terms_.size();
    }

    LPoly operator-() const {
        LPoly r = *this;
        for (PTerm& t : r.terms_) t.coef = chk_neg(t.coef);
        return r;
    }

    friend LPoly operator+(const LPoly& a, const LPoly& b) {
        LPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            if (a.terms_[i].exp < b.terms_[j].exp) r.terms_.push_back(a.terms_[i++]);
            else if (a.terms_[i].exp > b.terms_[j].exp) r.terms_.push_back(b.terms_[j++]);
            else {
                Coef c = chk_add(a.terms_[i].coef, b.terms_[j].coef);
                if (c != 0) r.terms_.push_back({a.terms_[i].exp, c});
                ++i; ++j;
            }
        }
        while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
        while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
        return r;
    }

    friend LPoly operator-(const LPoly& a, const LPoly& b) { return a + (-b); }

    friend LPoly operator*(const LPoly& a, const LPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.is_monomial()) return a.scaled(b.terms_[0].exp, b.terms_[0].coef);
        if (a.is_monomial()) return b.scaled(a.terms_[0].exp, a.terms_[0].coef);
        LPoly r;
        for (const PTerm& t : a.terms_) r = r + b.scaled(t.exp, t.coef);
        return r;
    }

    /// this * c * q^e.
    LPoly scaled(int32_t e, Coef c) const {
        if (c == 0) return {};
        LPoly r;
        r.terms_.reserve(terms_.size());
        for (const PTerm& t : terms_)
            r.terms_.push_back({chk_add32(t.exp, e), chk_mul(t.coef, c)});
        return r;
    }

    /// gcd of all coefficients (nonnegative; 0 for the zero polynomial).
    Coef content() const {
        Coef g = 0;
        for (const PTerm& t : terms_) {
            g = gcd64(g, t.coef);
            if (g == 1) break;
        }
        return g;
    }

    /// Divide every coefficient by d (must divide exactly).
    LPoly div_content(Coef d) const {
        LPoly r;
        r.terms_.reserve(terms_.size());
        for (const PTerm& t : terms_) r.terms_.push_back({t.exp, t.coef / d});
        return r;
    }

    /// Shift all exponents by e.
    LPoly shifted(int32_t e) const { return scaled(e, 1); }

    /// Polynomial division this = q*d + r for an ordinary (low >= 0) divisor d
    /// with leading coefficient +/-1; both quotient and remainder stay integral.
    /// Requires *this to be an ordinary polynomial as well.
    std::pair<LPoly, LPoly> divmod_unit(const LPoly& d) const;

    /// Exact division (throws if the division leaves a remainder).
    LPoly divexact(const LPoly& d) const;

    /// Substitute q -> q^k (k may be negative; k = 0 maps q^e to 1 for all e,
    /// collapsing the polynomial to the sum of its coefficients).
    LPoly compose_power(int32_t k) const;

    /// Render as a human-readable string, e.g. "q^2 - 3*q + 1".
    std::string str() const;

private:
    Terms terms_;
};

/// gcd of two Laurent polynomials, normalized: primitive, ordinary (low = 0),
/// positive leading coefficient. gcd(0,0) = 0.
LPoly lpoly_gcd(LPoly a, LPoly b);

} // namespace qtorus
