#pragma once
/// @file qmode.hpp
/// @brief Choice of coefficient field: q transcendental, or q a primitive d-th root of unity.
///
/// Generic mode works in Q(q); root-of-unity mode works in Q[q]/(Phi_d(q)) where
/// Phi_d is the d-th cyclotomic polynomial. A QMode value is a tiny trivially
/// copyable tag; cyclotomic data is interned in a global lock-free registry.

#include "qtorus/lpoly.hpp"

#include <cstdint>
#include <string>

namespace qtorus {

/// Largest supported root-of-unity order.
inline constexpr int32_t kMaxRootOrder = 512;

class QMode {
public:
    /// Generic: q transcendental over Q.
    static QMode generic() { return QMode(0); }
    /// q = primitive d-th root of unity (d >= 1).
    static QMode root_of_unity(int32_t d);

    bool is_generic() const { return code_ == 0; }
    bool is_root() const { return code_ != 0; }
    /// Root order d; only meaningful in root mode.
    int32_t order() const { return code_; }

    /// Membership in Lambda(q) = {n : q^n = 1}: {0} in generic mode, dZ at a
    /// primitive d-th root of unity.
    bool lambda_contains(int64_t n) const {
        return code_ == 0 ? n == 0 : n % code_ == 0;
    }

    /// The d-th cyclotomic polynomial (root mode only).
    const LPoly& phi() const;
    /// deg Phi_d = Euler phi(d) (root mode only).
    int32_t phi_degree() const { return phi().degree(); }

    /// "generic" or "root:<d>".
    std::string str() const;
    /// Parse "generic" or "root:<d>".
    static QMode parse(const std::string& s);

    friend bool operator==(const QMode&, const QMode&) = default;

private:
    explicit QMode(int32_t code) : code_(code) {}
    int32_t code_ = 0;
};

} // namespace qtorus
