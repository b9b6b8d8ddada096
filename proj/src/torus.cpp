#include "qtorus/torus.hpp"

namespace qtorus {

TorusElement TorusElement::monomial(QMode mode, int32_t m, int32_t n) {
    return monomial(mode, m, n, Scalar::one(mode));
}

TorusElement TorusElement::monomial(QMode mode, int32_t m, int32_t n, const Scalar& c) {
    TorusElement e(mode);
    if (!c.is_zero()) e.terms_.emplace(MonKey{m, n}, c);
    return e;
}

Scalar TorusElement::coeff(int32_t m, int32_t n) const {
    auto it = terms_.find(MonKey{m, n});
    return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

void TorusElement::add_term(MonKey k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TorusElement TorusElement::operator-() const {
    TorusElement r(mode_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

TorusElement operator+(const TorusElement& a, const TorusElement& b) {
    TorusElement r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
}

TorusElement operator-(const TorusElement& a, const TorusElement& b) {
    TorusElement r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
    return r;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
    QMode mode = a.mode_;
    TorusElement r(mode);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            // (x^m y^n)(x^p y^s) = q^{np} x^{m+p} y^{n+s}
            Scalar c = ca * cb * q_pow(mode, int64_t(ka.n) * kb.m);
            r.add_term(MonKey{chk_add32(ka.m, kb.m), chk_add32(ka.n, kb.n)}, c);
        }
    }
    return r;
}

TorusElement TorusElement::scaled(const Scalar& c) const {
    TorusElement r(mode_);
    for (const auto& [k, v] : terms_) r.add_term(k, v * c);
    return r;
}

TorusElement TorusElement::bar() const {
    TorusElement r(mode_);
    for (const auto& [k, c] : terms_)
        r.add_term(MonKey{k.m, int32_t(-k.n)}, c * q_pow(mode_, -int64_t(k.m) * k.n));
    return r;
}

std::pair<TorusElement, TorusElement> TorusElement::pm_decompose() const {
    TorusElement b = bar();
    Scalar half = Scalar::from_rat(mode_, 1, 2);
    return {(*this + b).scaled(half), (*this - b).scaled(half)};
}

bool TorusElement::in_commutator_space() const {
    for (const auto& [k, c] : terms_) {
        (void)c;
        if (mode_.lambda_contains(k.m) && mode_.lambda_contains(k.n)) return false;
    }
    return true;
}

std::string TorusElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        if (k.m != 0) s += "*x^" + std::to_string(k.m);
        if (k.n != 0) s += "*y^" + std::to_string(k.n);
    }
    return s;
}

nlohmann::ordered_json TorusElement::to_json() const {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_)
        terms.push_back({{"m", k.m}, {"n", k.n}, {"c", c.to_json()}});
    return {{"terms", std::move(terms)}};
}

TorusElement TorusElement::from_json(QMode mode, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw ParseError("torus element JSON must be {\"terms\": [...]}");
    TorusElement e(mode);
    for (const auto& t : j.at("terms")) {
        int64_t m = t.at("m").get<int64_t>(), n = t.at("n").get<int64_t>();
        if (m < INT32_MIN || m > INT32_MAX || n < INT32_MIN || n > INT32_MAX)
            throw ParseError("torus exponent out of range");
        e.add_term(MonKey{int32_t(m), int32_t(n)}, Scalar::from_json(mode, t.at("c")));
    }
    return e;
}

} // namespace qtorus
