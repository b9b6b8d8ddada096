#pragma once
/// @file supermatrix.hpp
/// @brief gl(M,N) over the quantum torus, plus the centrally extended bracket.
///
/// Indices 0..M-1 are even, M..M+N-1 are odd; the parity of a matrix unit
/// E_{rc} is par(r) xor par(c). The supertrace weights even diagonal entries
/// +1 and odd ones -1. The extension adjoins central symbols c(u) for
/// u in Lambda(q) and one extra symbol c_y; the 2-cocycle on monomial tensors
/// (A (x) a x^{m} y^{n}, B (x) b x^{p} y^{s}) contributes
///   a b q^{np} str(AB) [ m [m+p=0] [n+s in Lambda] c(n+s) + n [m+p=0][n+s=0] c_y ].

#include "qtorus/torus.hpp"

#include <map>
#include <optional>

namespace qtorus {

/// Parity of a homogeneous object: even (0) or odd (1).
enum class Parity : uint8_t { Even = 0, Odd = 1 };

class SuperMatrix {
public:
    using Key = std::pair<int32_t, int32_t>; // (row, col)
    using Entries = std::map<Key, TorusElement>;

    SuperMatrix(QMode mode, int32_t M, int32_t N) : mode_(mode), M_(M), N_(N) {
        if (M < 0 || N < 0 || M + N <= 0) throw ConfigError("bad gl(M,N) shape");
    }

    /// E_{rc} tensor v.
    static SuperMatrix unit(QMode mode, int32_t M, int32_t N, int32_t r, int32_t c,
                            const TorusElement& v);

    QMode mode() const { return mode_; }
    int32_t rows_even() const { return M_; }
    int32_t rows_odd() const { return N_; }
    int32_t dim() const { return M_ + N_; }
    const Entries& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    /// Parity of a row/column index.
    Parity index_parity(int32_t i) const { return i < M_ ? Parity::Even : Parity::Odd; }

    /// Parity of the whole matrix: Even for 0; MixedParityError when entries of
    /// both parities are present.
    Parity parity() const;
    /// Parity if homogeneous, nullopt when mixed.
    std::optional<Parity> parity_opt() const;

    const TorusElement& entry(int32_t r, int32_t c) const;
    void add_entry(int32_t r, int32_t c, const TorusElement& v);

    friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
        return a.M_ == b.M_ && a.N_ == b.N_ && a.entries_ == b.entries_;
    }

    SuperMatrix operator-() const;
    friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
    SuperMatrix scaled(const Scalar& c) const;
    SuperMatrix scaled(const TorusElement& c) const; // entrywise right-multiply

    /// Supertrace: sum of +entry(i,i) for even i and -entry(i,i) for odd i.
    TorusElement str() const;

    std::string str_repr() const;

private:
    void check_shape(const SuperMatrix& o) const {
        if (M_ != o.M_ || N_ != o.N_) throw ConfigError("gl(M,N) shape mismatch");
    }

    QMode mode_;
    int32_t M_, N_;
    Entries entries_;
};

/// Element of the centrally extended algebra: matrix part + central coordinates.
class ExtElement {
public:
    ExtElement(QMode mode, int32_t M, int32_t N) : mat_(mode, M, N) {}
    explicit ExtElement(SuperMatrix m) : mat_(std::move(m)) {}

    static ExtElement central(QMode mode, int32_t M, int32_t N, int64_t u, const Scalar& v);

    QMode mode() const { return mat_.mode(); }
    const SuperMatrix& mat() const { return mat_; }
    SuperMatrix& mat() { return mat_; }
    const std::map<int64_t, Scalar>& c_coords() const { return c_; }
    const Scalar& cy() const { return cy_; }

    void add_central(int64_t u, const Scalar& v);
    void add_cy(const Scalar& v);

    bool is_zero() const { return mat_.is_zero() && c_.empty() && cy_.is_zero(); }

    friend bool operator==(const ExtElement& a, const ExtElement& b) {
        return a.mat_ == b.mat_ && a.c_ == b.c_ && a.cy_ == b.cy_;
    }

    ExtElement operator-() const;
    friend ExtElement operator+(const ExtElement& a, const ExtElement& b);
    friend ExtElement operator-(const ExtElement& a, const ExtElement& b);
    ExtElement scaled(const Scalar& c) const;

    std::string str_repr() const;

    /// {"M", "N", "entries": [{r, c, v}], "c": [{n, v}], "cy"}.
    nlohmann::ordered_json to_json() const;
    static ExtElement from_json(QMode mode, const nlohmann::json& j);

private:
    SuperMatrix mat_;
    std::map<int64_t, Scalar> c_; // coordinates on the c(u) symbols, u in Lambda
    Scalar cy_;
};

/// The super-bracket with the central 2-cocycle. Both arguments must have
/// homogeneous matrix parts (MixedParityError otherwise); central parts bracket
/// to zero. [A,B] = AB - (-1)^{|A||B|} BA + cocycle(A, B).
ExtElement superbracket_ext(const ExtElement& a, const ExtElement& b);

} // namespace qtorus
