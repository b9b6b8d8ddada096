#pragma once
/// @file torus.hpp
/// @brief The quantum torus C_q = C<x^{±1}, y^{±1}> / (yx - qxy) over K[eps].
///
/// Elements are finite K[eps]-linear combinations of monomials x^m y^n with the
/// product rule (x^m y^n)(x^p y^s) = q^{np} x^{m+p} y^{n+s}. The bar map is the
/// anti-involution fixing scalars with bar(x) = x, bar(y) = y^{-1}, i.e.
/// bar(x^m y^n) = q^{-mn} x^m y^{-n}.

#include "qtorus/scalar.hpp"

#include <map>
#include <string>
#include <utility>

namespace qtorus {

/// Exponent pair of a torus monomial x^m y^n.
struct MonKey {
    int32_t m = 0;
    int32_t n = 0;
    friend auto operator<=>(const MonKey&, const MonKey&) = default;
};

class TorusElement {
public:
    using Terms = std::map<MonKey, Scalar>;

    explicit TorusElement(QMode mode = QMode::generic()) : mode_(mode) {}

    static TorusElement zero(QMode mode) { return TorusElement(mode); }
    static TorusElement one(QMode mode) { return monomial(mode, 0, 0); }
    /// x^m y^n.
    static TorusElement monomial(QMode mode, int32_t m, int32_t n);
    /// c * x^m y^n.
    static TorusElement monomial(QMode mode, int32_t m, int32_t n, const Scalar& c);

    QMode mode() const { return mode_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of x^m y^n (zero if absent).
    Scalar coeff(int32_t m, int32_t n) const;

    /// Add c * x^m y^n in place.
    void add_term(MonKey k, const Scalar& c);

    friend bool operator==(const TorusElement& a, const TorusElement& b) {
        return a.terms_ == b.terms_; // canonical: no zero terms stored
    }

    TorusElement operator-() const;
    friend TorusElement operator+(const TorusElement& a, const TorusElement& b);
    friend TorusElement operator-(const TorusElement& a, const TorusElement& b);
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b);
    TorusElement scaled(const Scalar& c) const;

    /// The bar anti-involution.
    TorusElement bar() const;

    /// Symmetric/antisymmetric parts under bar: (a + bar a)/2 and (a - bar a)/2.
    std::pair<TorusElement, TorusElement> pm_decompose() const;

    /// Membership in the commutator subspace [C_q, C_q]: every monomial
    /// x^m y^n present must have m or n outside Lambda(q).
    bool in_commutator_space() const;

    /// e.g. "(q + 1)*x^2*y^-1 + x".
    std::string str() const;

    /// {"terms": [{"m": .., "n": .., "c": {even, eps}} ...]} in key order.
    nlohmann::ordered_json to_json() const;
    static TorusElement from_json(QMode mode, const nlohmann::json& j);

private:
    QMode mode_;
    Terms terms_;
};

} // namespace qtorus
