#pragma once
// Internal numeric kernel behind the Fock verifiers. The bracket identities on
// states have coefficients in Q + Q eps with all q-dependence confined to
// explicit power prefactors, so the hot loops run over small exact rationals
// and interned states, and only the final accumulators track q exponents.
// Not part of the public API.

#include "qtorus/fock.hpp"

#include <boost/container/small_vector.hpp>

#include <memory>
#include <unordered_map>

namespace qtorus {
namespace fockkern {

// --- exact small rationals -------------------------------------------------

struct Rat {
    int64_t num = 0;
    int64_t den = 1; // > 0, coprime with num
    static Rat of(int64_t n, int64_t d = 1);
    bool is_zero() const { return num == 0; }
    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend bool operator==(const Rat&, const Rat&) = default;
    std::string str() const;
};

// x = ev + eps * ep with eps^2 = -1/2.
struct Rat2 {
    Rat ev{};
    Rat ep{};
    static Rat2 of(int64_t n, int64_t d = 1) { return Rat2{Rat::of(n, d), Rat{}}; }
    bool is_zero() const { return ev.is_zero() && ep.is_zero(); }
    friend Rat2 operator+(const Rat2& a, const Rat2& b) { return {a.ev + b.ev, a.ep + b.ep}; }
    friend Rat2 operator-(const Rat2& a) { return {-a.ev, -a.ep}; }
    friend Rat2 operator-(const Rat2& a, const Rat2& b) { return {a.ev - b.ev, a.ep - b.ep}; }
    friend Rat2 operator*(const Rat2& a, const Rat2& b) {
        // (x + eps y)(u + eps v) = xu - yv/2 + eps (xv + yu)
        return {a.ev * b.ev - Rat::of(1, 2) * (a.ep * b.ep), a.ev * b.ep + a.ep * b.ev};
    }
    friend bool operator==(const Rat2&, const Rat2&) = default;
    std::string str() const;
};

Scalar rat2_to_scalar(QMode mode, const Rat2& r);

// --- single-factor action (defined in fock.cpp, shared with apply_factor) ---

// Applies f to a basis state. Returns false when the result is zero; otherwise
// fills the (single) output state and its coefficient.
bool factor_action(const ModeFactor& f, const FockState& in, int tau, FockState& out, Rat2& coef);

// The rewrite of :u v: as at most two sequential factor chains.
struct Chain {
    ModeFactor first;  // applied first
    ModeFactor second; // applied second
    Rat weight;
};
using Chains = boost::container::small_vector<Chain, 2>;
Chains normal_order_chains(const ModeFactor& u, const ModeFactor& v);

// The written factor pair (u, v) = (u(m-s), v(s)) of family X_{ij}(m, .).
void quad_pair(Family fam, int32_t i, int32_t j, int64_t m, int64_t s, ModeFactor& u,
               ModeFactor& v);

// --- interning ---------------------------------------------------------------

struct StateHash {
    size_t operator()(const FockState& s) const;
};

class Interner {
  public:
    int32_t intern(const FockState& s);
    const FockState& state(int32_t id) const { return states_[size_t(id)]; }
    size_t size() const { return states_.size(); }

  private:
    std::vector<FockState> states_;
    std::unordered_map<FockState, int32_t, StateHash> index_;
};

// Memoized single-factor action on interned states.
class FactorMemo {
  public:
    FactorMemo(Interner& interner, int tau) : interner_(interner), tau_(tau) {}
    // Returns false when the factor annihilates the state.
    bool apply(const ModeFactor& f, int32_t id, int32_t& out, Rat2& coef);
    Interner& interner() { return interner_; }
    int tau() const { return tau_; }

  private:
    Interner& interner_;
    int tau_;
    struct Entry {
        int32_t out; // -1 when zero
        Rat2 coef;
    };
    std::unordered_map<uint64_t, Entry> memo_;
};

// One contribution of a quadratic operator on a state: the summand at index s
// maps the state to out with coefficient c (before the q^{-n s} prefactor,
// which is the only place the second exponent enters).
struct RowEntry {
    int64_t s = 0;
    int32_t out = 0;
    Rat2 c{};
};
using Row = boost::container::small_vector<RowEntry, 4>;

// Rows of X_{ij}(m, .) on interned states, cached per (family, i, j, m).
// Returned references stay valid for the cache's lifetime.
class RowCache {
  public:
    explicit RowCache(FactorMemo& memo) : memo_(memo) {}
    const Row& row(Family fam, int32_t i, int32_t j, int64_t m, int32_t id);

  private:
    FactorMemo& memo_;
    std::unordered_map<uint64_t, std::unordered_map<int32_t, std::unique_ptr<Row>>> rows_;
};

// --- q-exponent accumulators -------------------------------------------------

// A finite sum  sum_k coeff_k q^{e_k}  (generic mode: e_k the literal
// exponent; root mode: e_k a slot of the canonical power basis of the
// cyclotomic quotient). Kept sorted by key; zero coefficients are pruned on
// normalize().
struct KScal {
    boost::container::small_vector<std::pair<int64_t, Rat2>, 6> terms;
    void normalize();
    bool is_zero() const;
    friend bool operator==(const KScal&, const KScal&) = default;
};

// Per-mode reducer: accumulates c q^e into a KScal with the mode's reduction.
class QBasis {
  public:
    explicit QBasis(QMode mode);
    QMode mode() const { return mode_; }
    void add(KScal& acc, int64_t e, const Rat2& c) const;
    Scalar to_scalar(const KScal& k) const;
    // Splits a Scalar into basis terms (exponent key, coefficient) compatible
    // with add(); works for any Scalar whose denominators are constants.
    void split_scalar(const Scalar& s, KScal& out) const;

  private:
    QMode mode_;
    std::vector<std::vector<Rat>> pow_; // root mode: q^r in basis coordinates, r in [0, d)
};

} // namespace fockkern
} // namespace qtorus
