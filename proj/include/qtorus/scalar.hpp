#pragma once
/// @file scalar.hpp
/// @brief The working scalar ring K[eps] with eps^2 = -1/2, over K = Q(q) or
///        Q[q]/(Phi_d(q)) depending on the session's q-mode.
///
/// A Scalar carries its QMode tag. Binary operations require matching modes
/// (a structural zero is mode-agnostic and adopts the other operand's mode).

#include "qtorus/fq.hpp"

#include <json.hpp>

#include <string>

namespace qtorus {

class Scalar {
public:
    Scalar() = default; // generic-mode zero

    static Scalar zero(QMode m) { return Scalar(m, Fq{}, Fq{}); }
    static Scalar one(QMode m) { return Scalar(m, fq_from_int(1), Fq{}); }
    static Scalar from_int(QMode m, Coef v) { return Scalar(m, fq_from_int(v), Fq{}); }
    static Scalar from_rat(QMode m, Coef n, Coef d) { return Scalar(m, fq_from_rat(n, d), Fq{}); }
    /// The odd unit eps (eps^2 = -1/2).
    static Scalar eps(QMode m) { return Scalar(m, Fq{}, fq_from_int(1)); }
    static Scalar make(QMode m, Fq even, Fq eps_part) {
        return Scalar(m, std::move(even), std::move(eps_part));
    }

    QMode mode() const { return mode_; }
    const Fq& even() const { return ev_; }
    const Fq& eps_part() const { return ep_; }

    bool is_zero() const { return ev_.is_zero() && ep_.is_zero(); }
    bool is_one() const { return ev_.is_one() && ep_.is_zero(); }

    /// Equality is structural; operands of different modes are only equal when
    /// both are zero.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.mode_ == b.mode_ && a.ev_ == b.ev_ && a.ep_ == b.ep_;
    }

    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        if (auto c = a.ev_ <=> b.ev_; c != 0) return c;
        return a.ep_ <=> b.ep_;
    }

    Scalar operator-() const { return Scalar(mode_, fq_neg(ev_), fq_neg(ep_)); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        QMode m = join(a, b);
        return Scalar(m, fq_add(m, a.ev_, b.ev_), fq_add(m, a.ep_, b.ep_));
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        QMode m = join(a, b);
        if (a.ep_.is_zero() && b.ep_.is_zero())
            return Scalar(m, fq_mul(m, a.ev_, b.ev_), Fq{});
        // (a0 + a1 e)(b0 + b1 e) = a0 b0 - a1 b1 / 2 + (a0 b1 + a1 b0) e
        Fq even = fq_sub(m, fq_mul(m, a.ev_, b.ev_),
                         fq_mul(m, fq_from_rat(1, 2), fq_mul(m, a.ep_, b.ep_)));
        Fq eps = fq_add(m, fq_mul(m, a.ev_, b.ep_), fq_mul(m, a.ep_, b.ev_));
        return Scalar(m, std::move(even), std::move(eps));
    }

    /// Multiplicative inverse via the conjugate: 1/(a+be) = (a-be)/(a^2 + b^2/2).
    /// Throws DivisionByNonUnitError when the norm vanishes (possible in split
    /// cyclotomic rings, e.g. d = 8, and for zero).
    Scalar inverse() const {
        Fq norm = fq_add(mode_, fq_mul(mode_, ev_, ev_),
                         fq_mul(mode_, fq_from_rat(1, 2), fq_mul(mode_, ep_, ep_)));
        if (norm.is_zero())
            throw DivisionByNonUnitError("scalar with vanishing norm is not invertible");
        Fq inv_norm = fq_inv(mode_, norm);
        return Scalar(mode_, fq_mul(mode_, ev_, inv_norm),
                      fq_neg(fq_mul(mode_, ep_, inv_norm)));
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    /// Fast multiply by c * q^e.
    Scalar scaled(int32_t e, Coef c) const {
        return Scalar(mode_, fq_scale(mode_, ev_, e, c), fq_scale(mode_, ep_, e, c));
    }
    /// Fast multiply by the rational n/d.
    Scalar times_rat(Coef n, Coef d) const {
        Fq r = fq_from_rat(n, d);
        return Scalar(mode_, fq_mul(mode_, ev_, r), fq_mul(mode_, ep_, r));
    }

    /// Human-readable form, e.g. "(q + 1)/2 + (1)*e".
    std::string str() const;

    /// {"even": "<expr>", "eps": "<expr>"}.
    nlohmann::ordered_json to_json() const;
    /// Parse from the JSON form (strings in expression syntax) for a given mode.
    static Scalar from_json(QMode m, const nlohmann::json& j);

private:
    Scalar(QMode m, Fq ev, Fq ep) : mode_(m), ev_(std::move(ev)), ep_(std::move(ep)) {}

    static QMode join(const Scalar& a, const Scalar& b) {
        if (a.mode_ == b.mode_) return a.mode_;
        if (a.is_zero()) return b.mode_;
        if (b.is_zero()) return a.mode_;
        throw Error("scalar mode mismatch: " + a.mode_.str() + " vs " + b.mode_.str());
    }

    QMode mode_ = QMode::generic();
    Fq ev_;
    Fq ep_;
};

/// q^k as a scalar.
inline Scalar q_pow(QMode m, int64_t k) { return Scalar::make(m, fq_q_pow(m, k), Fq{}); }

/// The geometric q-power sum: for m >= 0 the sum of q^{n t} over 0 <= t < m,
/// and for m < 0 minus the sum over m <= t < 0. Always a Laurent polynomial;
/// equals (q^{mn} - 1)/(q^n - 1) when q^n != 1 and equals m when q^n = 1.
Scalar q_ratio(QMode m, int64_t mm, int64_t nn);

/// theta(n): 1 for n > 0, 1/2 for n = 0, 0 for n < 0.
Scalar theta(QMode m, int64_t n);

} // namespace qtorus
