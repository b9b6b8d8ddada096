#pragma once
/// @file common.hpp
/// @brief Error types and checked integer arithmetic used by all qtorus modules.
///
/// All exact arithmetic in the library runs on checked 128-bit coefficients:
/// any operation that would leave the representable range throws OverflowError
/// instead of wrapping. Verification suites therefore either produce exact
/// results or fail loudly. (Polynomial gcd internals temporarily widen to
/// arbitrary precision; see src/bigpoly.hpp.)

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qtorus {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a checked int64 operation would overflow.
struct OverflowError : Error {
    using Error::Error;
};

/// Thrown on division by zero or by a non-invertible ring element.
struct DivisionByNonUnitError : Error {
    using Error::Error;
};

/// Thrown when an operation requires homogeneous (pure-parity) input.
struct MixedParityError : Error {
    using Error::Error;
};

/// Thrown on invalid session/CLI configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// Thrown on malformed serialized input (JSON or expression strings).
struct ParseError : Error {
    using Error::Error;
};

/// Thrown when the central character cannot be pinned down by the residual system.
struct UnderdeterminedCentralError : Error {
    using Error::Error;
};

/// Thrown when a generator or operator reference carries an out-of-range index.
struct BadIndexError : Error {
    using Error::Error;
};

/// Coefficient type for all exact arithmetic: checked 128-bit integers.
/// Wide enough that reduced fractions never overflow in practice, while staying
/// allocation-free; any overflow throws instead of wrapping.
using Coef = __int128;

/// Checked coefficient addition.
inline Coef chk_add(Coef a, Coef b) {
    Coef r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coefficient add overflow");
    return r;
}

/// Checked coefficient subtraction.
inline Coef chk_sub(Coef a, Coef b) {
    Coef r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("coefficient sub overflow");
    return r;
}

/// Checked coefficient multiplication.
inline Coef chk_mul(Coef a, Coef b) {
    Coef r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coefficient mul overflow");
    return r;
}

/// Checked coefficient negation.
inline Coef chk_neg(Coef a) {
    return chk_sub(0, a);
}

/// gcd with the result always nonnegative.
inline Coef gcd64(Coef a, Coef b) {
    if (a < 0) a = chk_neg(a);
    if (b < 0) b = chk_neg(b);
    while (b != 0) {
        Coef t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Decimal rendering (no library support for 128-bit streams).
inline std::string coef_str(Coef v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Peel digits from the absolute value without overflowing on the minimum.
    std::string s;
    while (v != 0) {
        int d = int(v % 10);
        if (d < 0) d = -d;
        s += char('0' + d);
        v /= 10;
    }
    if (neg) s += '-';
    return {s.rbegin(), s.rend()};
}

/// Checked addition for int exponents (kept narrow so monomial keys stay small).
inline int32_t chk_add32(int32_t a, int32_t b) {
    int64_t r = int64_t(a) + int64_t(b);
    if (r < INT32_MIN || r > INT32_MAX) throw OverflowError("int32 exponent overflow");
    return int32_t(r);
}

} // namespace qtorus
