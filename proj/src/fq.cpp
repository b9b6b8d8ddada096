#include "qtorus/fq.hpp"

#include "bigpoly.hpp"

#include <cctype>

namespace qtorus {

namespace {

// Reduce a Laurent polynomial to the canonical residue mod Phi_d: fold
// exponents mod d (q^d = 1), then take the remainder mod Phi_d. Phi_d is monic,
// so the remainder has integer coefficients.
LPoly reduce_mod_phi(QMode mode, const LPoly& p) {
    int32_t d = mode.order();
    LPoly folded;
    for (const PTerm& t : p.terms()) {
        int32_t e = int32_t(((int64_t(t.exp) % d) + d) % d);
        folded = folded + LPoly::monomial(e, t.coef);
    }
    if (folded.is_zero()) return folded;
    const LPoly& phi = mode.phi();
    if (folded.degree() < phi.degree()) return folded;
    return folded.divmod_unit(phi).second;
}

} // namespace

Fq fq_from_int(Coef v) { return Fq{LPoly::constant(v), LPoly::one()}; }

Fq fq_from_rat(Coef n, Coef d) {
    if (d == 0) throw DivisionByNonUnitError("rational with zero denominator");
    if (n == 0) return Fq{};
    if (d < 0) { n = chk_neg(n); d = chk_neg(d); }
    Coef g = gcd64(n, d);
    return Fq{LPoly::constant(n / g), LPoly::constant(d / g)};
}

Fq fq_q_pow(QMode mode, int64_t k) {
    if (mode.is_generic()) {
        if (k < INT32_MIN || k > INT32_MAX) throw OverflowError("q exponent overflow");
        return Fq{LPoly::monomial(int32_t(k), 1), LPoly::one()};
    }
    int64_t d = mode.order();
    int32_t e = int32_t(((k % d) + d) % d);
    return Fq{reduce_mod_phi(mode, LPoly::monomial(e, 1)), LPoly::one()};
}

Fq fq_make(QMode mode, LPoly num, LPoly den) {
    if (den.is_zero()) throw DivisionByNonUnitError("division by zero");
    if (num.is_zero()) return Fq{};
    if (mode.is_root()) {
        num = reduce_mod_phi(mode, num);
        den = reduce_mod_phi(mode, den);
        if (num.is_zero()) return Fq{};
        if (!den.is_constant()) {
            // Polynomial denominator: fold it into num via residue inversion.
            Fq inv = fq_inv(mode, Fq{den, LPoly::one()});
            Fq val = fq_mul(mode, Fq{num, LPoly::one()}, inv);
            return val;
        }
        Coef dc = den.constant_value();
        if (dc == 0) throw DivisionByNonUnitError("division by zero residue");
        if (dc < 0) { num = -num; dc = chk_neg(dc); }
        Coef g = gcd64(num.content(), dc);
        if (g > 1) { num = num.div_content(g); dc /= g; }
        return Fq{std::move(num), LPoly::constant(dc)};
    }
    // Generic mode: make den an ordinary polynomial, then fully reduce.
    int32_t k = den.low();
    if (k != 0) { den = den.shifted(-k); num = num.shifted(-k); }
    if (!den.is_constant() || den.constant_value() != 1) {
        LPoly g = lpoly_gcd(num, den);
        if (!g.is_one() && !g.is_zero()) {
            num = num.divexact(g);
            den = den.divexact(g);
        }
    }
    Coef cn = num.content(), cd = den.content();
    Coef g = gcd64(cn, cd);
    if (g > 1) { num = num.div_content(g); den = den.div_content(g); }
    if (den.leading() < 0) { num = -num; den = -den; }
    return Fq{std::move(num), std::move(den)};
}

Fq fq_neg(const Fq& a) { return Fq{-a.num, a.den}; }

Fq fq_add(QMode mode, const Fq& a, const Fq& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den == b.den) {
        LPoly n = a.num + b.num;
        if (n.is_zero()) return Fq{};
        if (a.den.is_one()) return Fq{std::move(n), LPoly::one()};
        return fq_make(mode, std::move(n), a.den);
    }
    return fq_make(mode, a.num * b.den + b.num * a.den, a.den * b.den);
}

Fq fq_sub(QMode mode, const Fq& a, const Fq& b) { return fq_add(mode, a, fq_neg(b)); }

Fq fq_mul(QMode mode, const Fq& a, const Fq& b) {
    if (a.is_zero() || b.is_zero()) return Fq{};
    if (a.den.is_one() && b.den.is_one()) {
        LPoly n = a.num * b.num;
        if (mode.is_root()) n = reduce_mod_phi(mode, n);
        return Fq{std::move(n), LPoly::one()};
    }
    return fq_make(mode, a.num * b.num, a.den * b.den);
}

Fq fq_inv(QMode mode, const Fq& a) {
    if (a.is_zero()) throw DivisionByNonUnitError("inverse of zero");
    if (mode.is_generic()) return fq_make(mode, a.den, a.num);
    if (a.num.is_constant()) return fq_make(mode, a.den, a.num);
    // num^{-1} = u/d mod Phi, so a^{-1} = den * u / d.
    auto [u, d] = detail::residue_inverse(a.num, mode.phi());
    return fq_make(mode, u * a.den, LPoly::constant(detail::narrow(d)));
}

Fq fq_div(QMode mode, const Fq& a, const Fq& b) { return fq_mul(mode, a, fq_inv(mode, b)); }

Fq fq_scale(QMode mode, const Fq& a, int32_t e, Coef c) {
    if (a.is_zero() || c == 0) return Fq{};
    if (a.den.is_one()) {
        LPoly n = a.num.scaled(e, c);
        if (mode.is_root()) n = reduce_mod_phi(mode, n);
        return Fq{std::move(n), LPoly::one()};
    }
    return fq_make(mode, a.num.scaled(e, c), a.den);
}

std::string fq_str(const Fq& a) {
    if (a.den.is_one()) return a.num.str();
    std::string num = a.num.str();
    std::string den = a.den.str();
    std::string out;
    if (a.num.is_monomial() && a.num.terms()[0].coef > 0) out = num;
    else out = "(" + num + ")";
    out += "/";
    // A bare denominator is only safe when it reparses as one '/' factor.
    if (a.den.is_constant() || (a.den.is_monomial() && a.den.terms()[0].coef == 1))
        out += den;
    else out += "(" + den + ")";
    return out;
}

namespace {

/// Minimal recursive-descent parser for field expressions in q.
class FqParser {
public:
    FqParser(QMode mode, const std::string& s) : mode_(mode), s_(s) {}

    Fq run() {
        Fq v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("scalar expression error at position " + std::to_string(pos_) +
                         ": " + what + " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Coef integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer");
        Coef v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = chk_add(chk_mul(v, 10), s_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    Fq expr() {
        Fq v = term();
        for (;;) {
            if (eat('+')) v = fq_add(mode_, v, term());
            else if (eat('-')) v = fq_sub(mode_, v, term());
            else return v;
        }
    }

    Fq term() {
        Fq v = factor();
        for (;;) {
            if (eat('*')) v = fq_mul(mode_, v, factor());
            else if (eat('/')) v = fq_div(mode_, v, factor());
            else return v;
        }
    }

    Fq factor() {
        if (eat('-')) return fq_neg(factor());
        if (eat('+')) return factor();
        Fq base = primary();
        if (eat('^')) {
            Coef k = integer();
            if (k < INT32_MIN || k > INT32_MAX) fail("exponent out of range");
            return power(base, int64_t(k));
        }
        return base;
    }

    Fq power(const Fq& base, int64_t k) {
        // q^k has a direct form; other bases use repeated multiplication.
        if (base.den.is_one() && base.num == LPoly::monomial(1, 1))
            return fq_q_pow(mode_, k);
        Fq b = k < 0 ? fq_inv(mode_, base) : base;
        uint64_t n = k < 0 ? uint64_t(-(k + 1)) + 1 : uint64_t(k);
        Fq acc = fq_from_int(1);
        while (n > 0) {
            if (n & 1) acc = fq_mul(mode_, acc, b);
            b = fq_mul(mode_, b, b);
            n >>= 1;
        }
        return acc;
    }

    Fq primary() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Fq v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 'q') { ++pos_; return fq_q_pow(mode_, 1); }
        if (std::isdigit(static_cast<unsigned char>(c))) return fq_from_int(integer());
        fail("expected number, 'q' or '('");
    }

    QMode mode_;
    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

Fq fq_parse(QMode mode, const std::string& s) { return FqParser(mode, s).run(); }

} // namespace qtorus
